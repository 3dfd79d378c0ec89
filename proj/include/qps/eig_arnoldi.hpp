#pragma once

#include <cstdint>
#include <vector>

#include "qps/pencil.hpp"
#include "qps/util.hpp"

namespace qps {

struct ArnoldiConfig {
  cplx shift{};              // target z0 (must not be an eigenvalue)
  int subspace = 80;         // Krylov dimension m
  int wanted = 10;           // eigenvalue count k, 1 <= k < m <= 2M
  double tolerance = 1e-10;  // Ritz residual bound relative to ||A||_est
  int max_restarts = 50;
  std::uint64_t seed = 0x5eed;
};

struct ArnoldiResult {
  std::vector<cplx> eigenvalues;            // lambda = z0 + 1/theta
  std::vector<std::vector<cplx>> vectors;   // companion-space vectors, unit norm
  std::vector<double> ritz_residuals;       // ||A w - lambda w||, w unit
  std::vector<char> converged;
  int restarts = 0;
  int op_applications = 0;

  bool all_converged() const {
    for (char c : converged)
      if (!c) return false;
    return true;
  }
};

// Shift-invert Arnoldi with explicit restarts and locking of converged Ritz
// vectors. Factors L(z0) once and reuses it for every inner solve; the basis
// is kept orthonormal by twice-applied modified Gram-Schmidt. Returns the
// wanted-count eigenvalues of the companion nearest the shift (in the
// shift-inverted ordering); unconverged slots are flagged if the restart
// budget runs out first.
template <class T>
ArnoldiResult arnoldi_shift_invert(const QuadraticPencil<T>& p,
                                   const ArnoldiConfig& cfg);

extern template ArnoldiResult arnoldi_shift_invert(
    const QuadraticPencil<double>&, const ArnoldiConfig&);
extern template ArnoldiResult arnoldi_shift_invert(const QuadraticPencil<cplx>&,
                                                   const ArnoldiConfig&);

}  // namespace qps
