#pragma once

#include <cstdint>
#include <vector>

#include "qps/dense_matrix.hpp"
#include "qps/util.hpp"

namespace qps {

// Eigenvalues of one dense solve, in canonical order (ascending imaginary
// part, then real part). converged[k] is false for any value left over when
// the QR iteration hit its global cap; iterations[k] is the sweep count the
// extraction of value k consumed.
struct SpectrumResult {
  std::vector<cplx> eigenvalues;
  std::vector<char> converged;
  std::vector<int> iterations;
  int total_iterations = 0;

  bool all_converged() const {
    for (char c : converged)
      if (!c) return false;
    return true;
  }
};

// In-place diagonal balancing (powers of two only, no permutation part):
// replaces a by D^-1 A D and returns diag(D). Exactly similar to the input.
std::vector<double> balance(DenseMatrix<double>& a);
std::vector<double> balance(DenseMatrix<cplx>& a);

template <class T>
struct HessenbergResult {
  DenseMatrix<T> h;  // upper Hessenberg, zeros below the subdiagonal stored
  DenseMatrix<T> q;  // unitary factor with a = q h q^H; empty if not requested
};

// Householder reduction to upper Hessenberg form.
HessenbergResult<double> hessenberg(DenseMatrix<double> a, bool want_q = true);
HessenbergResult<cplx> hessenberg(DenseMatrix<cplx> a, bool want_q = true);

// Eigenvalues of an upper Hessenberg matrix. The real path runs Francis
// double-shift QR with 2x2 block extraction for conjugate pairs; the complex
// path runs single-shift QR with the Wilkinson shift. A subdiagonal entry
// deflates when |h(i+1,i)| <= 1e-14 * (|h(i,i)| + |h(i+1,i+1)|); exceptional
// shifts fire every 10 stagnant sweeps and the whole iteration aborts after
// 30*n sweeps, flagging whatever is left.
SpectrumResult qr_eigenvalues(DenseMatrix<double> h);
SpectrumResult qr_eigenvalues(DenseMatrix<cplx> h);

// balance + hessenberg + qr_eigenvalues.
SpectrumResult eigenvalues(DenseMatrix<double> a);
SpectrumResult eigenvalues(DenseMatrix<cplx> a);

struct InverseIterationResult {
  std::vector<cplx> vector;        // unit 2-norm
  double residual = 0.0;           // ||A v - lambda v||_2
};

// Eigenvector for an approximate eigenvalue by inverse iteration on
// (A - lambda_tilde I), lambda_tilde nudged by 1e-10 * ||A||_F off the exact
// value; at most 5 steps, up to 3 retries with a larger nudge if the
// factorization breaks down exactly. Returns the best iterate seen.
InverseIterationResult eigenvector(const DenseMatrix<double>& a, cplx lambda);
InverseIterationResult eigenvector(const DenseMatrix<cplx>& a, cplx lambda);

// Independent symmetric path (Householder tridiagonalization + implicit QL),
// used as an oracle against the nonsymmetric solver. Ascending order.
// Only the lower triangle of a is referenced.
std::vector<double> symmetric_eigenvalues(DenseMatrix<double> a);

}  // namespace qps
