#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qps/util.hpp"

namespace qps {

// Complex banded LU factorization with partial pivoting, LAPACK-style band
// storage: A(i,j) lives at ab(kl+ku+i-j, j) for j-ku <= i <= j+kl, and kl
// extra rows on top absorb the fill-in produced by pivoting.
class BandedLU {
 public:
  BandedLU(std::int64_t n, std::int64_t kl, std::int64_t ku);

  // Accumulates into the band; throws if (i, j) lies outside it.
  void add(std::int64_t i, std::int64_t j, cplx v);

  // Factors in place. Declares near-singularity when a pivot drops below
  // rel_tol times the largest magnitude seen in the unfactored band.
  // Returns false in that case (factorization is left unusable).
  bool factor(double rel_tol = 1e-13);

  bool factored() const { return factored_; }
  bool singular() const { return singular_; }
  std::int64_t order() const { return n_; }

  // Solve A x = b in place (requires factored() and not singular()).
  void solve(std::span<cplx> b) const;
  // Solve A^H x = b in place using the same factors.
  void solve_adjoint(std::span<cplx> b) const;

 private:
  cplx& at(std::int64_t r, std::int64_t j) { return ab_[r * n_ + j]; }
  const cplx& at(std::int64_t r, std::int64_t j) const { return ab_[r * n_ + j]; }

  std::int64_t n_, kl_, ku_;
  std::int64_t rows_;  // 2*kl + ku + 1
  std::vector<cplx> ab_;
  std::vector<std::int64_t> piv_;
  bool factored_ = false;
  bool singular_ = false;
};

}  // namespace qps
