#include "qps/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qps {

template <class T>
double pencil_residual(const QuadraticPencil<T>& p, cplx lambda,
                       std::span<const cplx> u) {
  if (static_cast<std::int64_t>(u.size()) != p.order)
    throw std::invalid_argument("eigenvector size mismatch");
  const double unorm = norm2(u);
  if (unorm == 0.0) throw std::invalid_argument("zero vector has no residual");
  std::vector<cplx> y(p.order);
  p.apply(lambda, u, std::span<cplx>(y));
  const double denom =
      p.h0_fro + std::abs(lambda) * p.h1_fro + std::norm(lambda);
  return norm2(std::span<const cplx>(y)) / (unorm * denom);
}

template double pencil_residual(const QuadraticPencil<double>&, cplx,
                                std::span<const cplx>);
template double pencil_residual(const QuadraticPencil<cplx>&, cplx,
                                std::span<const cplx>);

namespace {

template <class T>
cplx as_cplx(T v) {
  return cplx(v);
}

}  // namespace

template <class T>
ShiftedSolver<T>::ShiftedSolver(const QuadraticPencil<T>& p, cplx z)
    : p_(&p), z_(z) {
  const std::int64_t m = p.order;
  // Band extents of L(z) = h0 + z h1 + z^2 I from the actual sparsity.
  std::int64_t kl = 0, ku = 0;
  for (const auto& e : p.h0.entries()) {
    kl = std::max(kl, e.row - e.col);
    ku = std::max(ku, e.col - e.row);
  }
  for (const auto& e : p.h1.entries()) {
    kl = std::max(kl, e.row - e.col);
    ku = std::max(ku, e.col - e.row);
  }
  lu_ = std::make_unique<BandedLU>(m, kl, ku);
  for (const auto& e : p.h0.entries()) lu_->add(e.row, e.col, as_cplx(e.value));
  for (const auto& e : p.h1.entries())
    lu_->add(e.row, e.col, z * as_cplx(e.value));
  const cplx z2 = z * z;
  for (std::int64_t i = 0; i < m; ++i) lu_->add(i, i, z2);
  singular_ = !lu_->factor();
}

template <class T>
void ShiftedSolver<T>::solve(std::span<const cplx> f, std::span<const cplx> g,
                             std::span<cplx> u, std::span<cplx> v) const {
  const std::int64_t m = p_->order;
  if (singular_) throw std::runtime_error("shift is a (near-)eigenvalue");
  if (static_cast<std::int64_t>(f.size()) != m ||
      static_cast<std::int64_t>(g.size()) != m ||
      static_cast<std::int64_t>(u.size()) != m ||
      static_cast<std::int64_t>(v.size()) != m)
    throw std::invalid_argument("shifted solve size mismatch");
  // L(z) u = -(g + (h1 + zI) f), then v = f + z u.
  std::vector<cplx> rhs(m);
  p_->h1.apply(f, std::span<cplx>(rhs));
  for (std::int64_t i = 0; i < m; ++i) rhs[i] = -(g[i] + rhs[i] + z_ * f[i]);
  lu_->solve(rhs);
  for (std::int64_t i = 0; i < m; ++i) {
    u[i] = rhs[i];
    v[i] = f[i] + z_ * rhs[i];
  }
}

template <class T>
void ShiftedSolver<T>::solve_adjoint(std::span<const cplx> f,
                                     std::span<const cplx> g, std::span<cplx> u,
                                     std::span<cplx> v) const {
  const std::int64_t m = p_->order;
  if (singular_) throw std::runtime_error("shift is a (near-)eigenvalue");
  if (static_cast<std::int64_t>(f.size()) != m ||
      static_cast<std::int64_t>(g.size()) != m ||
      static_cast<std::int64_t>(u.size()) != m ||
      static_cast<std::int64_t>(v.size()) != m)
    throw std::invalid_argument("shifted solve size mismatch");
  // (A - zI)^H (u; v) = (f; g) reduces to L(z)^H v = -(f + conj(z) g),
  // then u = g + (h1^H + conj(z) I) v.
  const cplx zc = std::conj(z_);
  std::vector<cplx> rhs(m);
  for (std::int64_t i = 0; i < m; ++i) rhs[i] = -(f[i] + zc * g[i]);
  lu_->solve_adjoint(rhs);
  std::vector<cplx> t(m);
  p_->h1.apply_adjoint(std::span<const cplx>(rhs), std::span<cplx>(t));
  for (std::int64_t i = 0; i < m; ++i) {
    v[i] = rhs[i];
    u[i] = g[i] + t[i] + zc * rhs[i];
  }
}

template <class T>
void ShiftedSolver<T>::solve(std::span<const cplx> rhs,
                             std::span<cplx> out) const {
  const std::int64_t m = p_->order;
  solve(rhs.subspan(0, m), rhs.subspan(m, m), out.subspan(0, m),
        out.subspan(m, m));
}

template <class T>
void ShiftedSolver<T>::solve_adjoint(std::span<const cplx> rhs,
                                     std::span<cplx> out) const {
  const std::int64_t m = p_->order;
  solve_adjoint(rhs.subspan(0, m), rhs.subspan(m, m), out.subspan(0, m),
                out.subspan(m, m));
}

template <class T>
void shifted_solve(const QuadraticPencil<T>& p, cplx z,
                   std::span<const cplx> f, std::span<const cplx> g,
                   std::span<cplx> u, std::span<cplx> v) {
  ShiftedSolver<T> s(p, z);
  if (s.singular())
    throw std::runtime_error("shifted solve: z is a (near-)eigenvalue");
  s.solve(f, g, u, v);
}

template void shifted_solve(const QuadraticPencil<double>&, cplx,
                            std::span<const cplx>, std::span<const cplx>,
                            std::span<cplx>, std::span<cplx>);
template void shifted_solve(const QuadraticPencil<cplx>&, cplx,
                            std::span<const cplx>, std::span<const cplx>,
                            std::span<cplx>, std::span<cplx>);

template <class T>
EigenPair certify_eigenpair(const QuadraticPencil<T>& p, cplx lambda,
                            std::uint64_t seed) {
  const std::int64_t m = p.order;
  EigenPair best;
  best.lambda = lambda;
  best.residual = std::numeric_limits<double>::infinity();

  double delta = 1e-10 * std::max(1.0, std::abs(lambda));
  for (int attempt = 0; attempt < 4; ++attempt) {
    const cplx shift = lambda + cplx(delta, delta);
    ShiftedSolver<T> solver(p, shift);
    if (solver.singular()) {
      delta *= 100.0;
      continue;
    }
    std::vector<cplx> w = seeded_unit_vector(2 * m, seed);
    std::vector<cplx> next(2 * m);
    for (int step = 0; step < 5; ++step) {
      solver.solve(std::span<const cplx>(w), std::span<cplx>(next));
      const double nn = norm2(std::span<const cplx>(next));
      if (!(nn > 0.0) || !std::isfinite(nn)) break;
      for (auto& x : next) x /= nn;
      w = next;
      std::span<const cplx> u(w.data(), static_cast<std::size_t>(m));
      const double un = norm2(u);
      if (un == 0.0) continue;
      const double r = pencil_residual(p, lambda, u);
      if (r < best.residual) {
        best.residual = r;
        best.vector.assign(u.begin(), u.end());
        for (auto& x : best.vector) x /= un;
      }
      if (best.residual < 1e-13) break;
    }
    if (best.residual < std::numeric_limits<double>::infinity()) break;
    delta *= 100.0;
  }
  if (!std::isfinite(best.residual))
    throw std::runtime_error("eigenpair certification failed to produce a vector");
  return best;
}

template EigenPair certify_eigenpair(const QuadraticPencil<double>&, cplx,
                                     std::uint64_t);
template EigenPair certify_eigenpair(const QuadraticPencil<cplx>&, cplx,
                                     std::uint64_t);

template struct QuadraticPencil<double>;
template struct QuadraticPencil<cplx>;
template class ShiftedSolver<double>;
template class ShiftedSolver<cplx>;

}  // namespace qps
