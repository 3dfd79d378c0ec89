#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace qps {

using cplx = std::complex<double>;

// Canonical output order for eigenvalue lists: ascending imaginary part,
// ties broken by real part.
inline bool canonical_less(const cplx& a, const cplx& b) {
  if (a.imag() != b.imag()) return a.imag() < b.imag();
  return a.real() < b.real();
}

inline double norm2(std::span<const cplx> x) {
  double s = 0.0;
  for (const cplx& v : x) s += std::norm(v);
  return std::sqrt(s);
}

inline double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Hausdorff distance between finite point sets: max over either set of the
// distance to the nearest point of the other. Empty sets are at distance 0
// from anything only if both are empty; otherwise infinity.
double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b);

// One-sided variant: max over a of dist(a_i, b).
double directed_hausdorff(std::span<const cplx> a, std::span<const cplx> b);

// Deterministic pseudorandom unit vector (complex entries, unit 2-norm).
std::vector<cplx> seeded_unit_vector(std::int64_t n, std::uint64_t seed);

}  // namespace qps
