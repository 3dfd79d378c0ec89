#pragma once

#include <cstdint>
#include <vector>

#include "qps/pencil.hpp"
#include "qps/util.hpp"

namespace qps {

struct ZGridSpec {
  double re_min = -1.0, re_max = 1.0;
  double im_min = -1.0, im_max = 1.0;
  int nx = 2, ny = 2;

  void validate() const;
  cplx point(int ix, int iy) const;  // ix in [0,nx), iy in [0,ny)
};

enum class SminStatus : char {
  converged = 0,
  approximate = 1,  // iteration cap hit; value is the last estimate
  singular = 2,     // factorization of L(z) broke down; value is exactly 0
};

struct SminResult {
  double value = 0.0;
  SminStatus status = SminStatus::converged;
  int iterations = 0;
};

// Smallest singular value of (A - zI) by inverse power iteration on the
// normal-equations operator: each step does one shifted solve with z and one
// adjoint solve on the same banded factors. Stops when successive estimates
// agree to 1e-8 relative, capped at 200 iterations.
template <class T>
SminResult smin_at(const QuadraticPencil<T>& p, cplx z,
                   std::uint64_t seed = 0x5eed);

struct PseudospectrumField {
  ZGridSpec grid;
  std::vector<double> values;      // ny * nx, index iy*nx + ix
  std::vector<int> iterations;
  std::vector<char> status;        // SminStatus per point
  std::uint64_t seed = 0;

  double value_at(int ix, int iy) const { return values[iy * grid.nx + ix]; }
};

// s_min over the whole grid. Points are independent; `workers` threads split
// the index range and results are merged by grid index, so the output does
// not depend on scheduling. A point failure flags the point, never the scan.
template <class T>
PseudospectrumField scan(const QuadraticPencil<T>& p, const ZGridSpec& grid,
                         std::uint64_t seed = 0x5eed, int workers = 1);

// Dense cross-check for small problems (pencil order <= 500): eigenvalues of
// the Hermitian normal matrix via the real symmetric embedding.
template <class T>
double smin_dense(const QuadraticPencil<T>& p, cplx z);

extern template SminResult smin_at(const QuadraticPencil<double>&, cplx,
                                   std::uint64_t);
extern template SminResult smin_at(const QuadraticPencil<cplx>&, cplx,
                                   std::uint64_t);
extern template PseudospectrumField scan(const QuadraticPencil<double>&,
                                         const ZGridSpec&, std::uint64_t, int);
extern template PseudospectrumField scan(const QuadraticPencil<cplx>&,
                                         const ZGridSpec&, std::uint64_t, int);
extern template double smin_dense(const QuadraticPencil<double>&, cplx);
extern template double smin_dense(const QuadraticPencil<cplx>&, cplx);

}  // namespace qps
