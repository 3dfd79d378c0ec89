#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qps/banded_lu.hpp"
#include "qps/dense_matrix.hpp"
#include "qps/sparse.hpp"
#include "qps/util.hpp"

namespace qps {

// The quadratic matrix pencil L(lambda) = h0 + lambda*h1 + lambda^2 * I.
template <class T>
struct QuadraticPencil {
  std::int64_t order = 0;
  SparseMatrix<T> h0;
  SparseMatrix<T> h1;
  double h0_fro = 0.0;  // cached Frobenius norms for residual scaling
  double h1_fro = 0.0;

  static QuadraticPencil make(SparseMatrix<T> h0_in, SparseMatrix<T> h1_in) {
    if (h0_in.order() != h1_in.order())
      throw std::invalid_argument("pencil coefficient orders differ");
    QuadraticPencil p;
    p.order = h0_in.order();
    p.h0 = std::move(h0_in);
    p.h1 = std::move(h1_in);
    p.h0_fro = p.h0.frobenius_norm();
    p.h1_fro = p.h1.frobenius_norm();
    return p;
  }

  bool is_real() const { return std::is_same_v<T, double>; }

  // y = L(lambda) x
  void apply(cplx lambda, std::span<const cplx> x, std::span<cplx> y) const {
    std::vector<cplx> tmp(order);
    h0.apply(x, y);
    h1.apply(x, std::span<cplx>(tmp));
    const cplx l2 = lambda * lambda;
    for (std::int64_t i = 0; i < order; ++i) y[i] += lambda * tmp[i] + l2 * x[i];
  }

  // Frobenius norm of the 2M x 2M companion matrix.
  double companion_norm() const {
    return std::sqrt(static_cast<double>(order) + h0_fro * h0_fro +
                     h1_fro * h1_fro);
  }
};

using RealPencil = QuadraticPencil<double>;
using ComplexPencil = QuadraticPencil<cplx>;

// Companion linearization [[0, I], [-h0, -h1]] of order 2M. The implicit form
// only applies the blocks; dense() materializes the full matrix. The pencil
// must outlive this view.
template <class T>
class CompanionMatrix {
 public:
  explicit CompanionMatrix(const QuadraticPencil<T>& p) : p_(&p) {}

  std::int64_t order() const { return 2 * p_->order; }

  // w = (u; v)  ->  (v; -h0 u - h1 v)
  template <class U>
  void apply(std::span<const U> x, std::span<U> y) const {
    const std::int64_t m = p_->order;
    if (static_cast<std::int64_t>(x.size()) != 2 * m ||
        static_cast<std::int64_t>(y.size()) != 2 * m)
      throw std::invalid_argument("companion apply size mismatch");
    auto u = x.subspan(0, m), v = x.subspan(m, m);
    std::vector<U> t(m);
    p_->h0.apply(u, std::span<U>(t));
    for (std::int64_t i = 0; i < m; ++i) {
      y[i] = v[i];
      y[m + i] = -t[i];
    }
    p_->h1.apply(v, std::span<U>(t));
    for (std::int64_t i = 0; i < m; ++i) y[m + i] -= t[i];
  }

  // Materializes the 2M x 2M matrix; refuses pencil orders beyond the cap.
  DenseMatrix<T> dense(std::int64_t max_pencil_order = 6000) const {
    const std::int64_t m = p_->order;
    if (m > max_pencil_order)
      throw std::invalid_argument(
          "dense companion refused: pencil order exceeds cap");
    DenseMatrix<T> a(2 * m);
    for (std::int64_t i = 0; i < m; ++i) a(i, m + i) = T{1};
    for (const auto& e : p_->h0.entries()) a(m + e.row, e.col) = -e.value;
    for (const auto& e : p_->h1.entries()) a(m + e.row, m + e.col) -= e.value;
    return a;
  }

  const QuadraticPencil<T>& pencil() const { return *p_; }

 private:
  const QuadraticPencil<T>* p_;
};

// Relative residual of an approximate eigenpair:
// ||L(lambda) u|| / (||u|| * (||h0||_F + |lambda| ||h1||_F + |lambda|^2)).
template <class T>
double pencil_residual(const QuadraticPencil<T>& p, cplx lambda,
                       std::span<const cplx> u);

struct EigenPair {
  cplx lambda;
  std::vector<cplx> vector;  // u-block, unit 2-norm
  double residual = 0.0;
};

// Factorization of (A - zI) through the banded matrix L(z): the block
// elimination v = f + z u reduces the companion solve to L(z) u = -(g +
// (h1 + zI) f). One instance holds one factorization and may serve many
// right-hand sides (and the adjoint system via the same factors).
template <class T>
class ShiftedSolver {
 public:
  ShiftedSolver(const QuadraticPencil<T>& p, cplx z);

  bool singular() const { return singular_; }
  cplx shift() const { return z_; }

  // (A - zI)(u; v) = (f; g)
  void solve(std::span<const cplx> f, std::span<const cplx> g,
             std::span<cplx> u, std::span<cplx> v) const;
  // (A - zI)^H (u; v) = (f; g)
  void solve_adjoint(std::span<const cplx> f, std::span<const cplx> g,
                     std::span<cplx> u, std::span<cplx> v) const;

  // Convenience for full-length (2M) vectors.
  void solve(std::span<const cplx> rhs, std::span<cplx> out) const;
  void solve_adjoint(std::span<const cplx> rhs, std::span<cplx> out) const;

 private:
  const QuadraticPencil<T>* p_;
  cplx z_;
  std::unique_ptr<BandedLU> lu_;
  bool singular_ = false;
};

// One-off variant: factors, solves, discards. Throws std::runtime_error if z
// is (numerically) an eigenvalue.
template <class T>
void shifted_solve(const QuadraticPencil<T>& p, cplx z,
                   std::span<const cplx> f, std::span<const cplx> g,
                   std::span<cplx> u, std::span<cplx> v);

// Eigenvector recovery and residual certification for a computed eigenvalue:
// a few inverse-iteration steps on the companion through ShiftedSolver, with
// the shift nudged off the eigenvalue. Returns the best iterate seen.
template <class T>
EigenPair certify_eigenpair(const QuadraticPencil<T>& p, cplx lambda,
                            std::uint64_t seed = 0x5eed);

extern template struct QuadraticPencil<double>;
extern template struct QuadraticPencil<cplx>;
extern template class ShiftedSolver<double>;
extern template class ShiftedSolver<cplx>;

}  // namespace qps
