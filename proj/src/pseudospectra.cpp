#include "qps/pseudospectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qps/eig_dense.hpp"

namespace qps {

void ZGridSpec::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max))
    throw std::invalid_argument("z-grid bounds must be strictly ordered");
  if (nx < 2 || ny < 2)
    throw std::invalid_argument("z-grid needs at least 2 points per axis");
}

cplx ZGridSpec::point(int ix, int iy) const {
  const double re = re_min + (re_max - re_min) * ix / (nx - 1);
  const double im = im_min + (im_max - im_min) * iy / (ny - 1);
  return {re, im};
}

template <class T>
SminResult smin_at(const QuadraticPencil<T>& p, cplx z, std::uint64_t seed) {
  const std::int64_t n = 2 * p.order;
  ShiftedSolver<T> solver(p, z);
  SminResult res;
  if (solver.singular()) {
    res.value = 0.0;
    res.status = SminStatus::singular;
    return res;
  }
  std::vector<cplx> x = seeded_unit_vector(n, seed);
  std::vector<cplx> y(n), w(n);
  double prev = -1.0;
  res.status = SminStatus::approximate;
  for (int it = 1; it <= 200; ++it) {
    res.iterations = it;
    // w = (B^H B)^{-1} x  via  B^H y = x,  B w = y
    solver.solve_adjoint(std::span<const cplx>(x), std::span<cplx>(y));
    solver.solve(std::span<const cplx>(y), std::span<cplx>(w));
    const double growth = norm2(std::span<const cplx>(w));
    if (!(growth > 0.0) || !std::isfinite(growth)) {
      res.value = 0.0;
      res.status = SminStatus::singular;
      return res;
    }
    const double est = 1.0 / std::sqrt(growth);
    for (std::int64_t i = 0; i < n; ++i) x[i] = w[i] / growth;
    res.value = est;
    if (prev >= 0.0 && std::abs(est - prev) < 1e-8 * std::max(est, 1e-300)) {
      res.status = SminStatus::converged;
      return res;
    }
    prev = est;
  }
  return res;
}

template <class T>
PseudospectrumField scan(const QuadraticPencil<T>& p, const ZGridSpec& grid,
                         std::uint64_t seed, int workers) {
  grid.validate();
  if (workers < 1) workers = 1;
  PseudospectrumField field;
  field.grid = grid;
  field.seed = seed;
  const int total = grid.nx * grid.ny;
  field.values.assign(total, 0.0);
  field.iterations.assign(total, 0);
  field.status.assign(total, 0);

  auto run_range = [&](int begin, int end) {
    for (int idx = begin; idx < end; ++idx) {
      const int ix = idx % grid.nx, iy = idx / grid.nx;
      SminResult r = smin_at(p, grid.point(ix, iy), seed);
      field.values[idx] = r.value;
      field.iterations[idx] = r.iterations;
      field.status[idx] = static_cast<char>(r.status);
    }
  };

  if (workers == 1 || total < 2 * workers) {
    run_range(0, total);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int b = w * chunk, e = std::min(total, b + chunk);
      if (b >= e) break;
      pool.emplace_back(run_range, b, e);
    }
    for (auto& t : pool) t.join();
  }
  return field;
}

template <class T>
double smin_dense(const QuadraticPencil<T>& p, cplx z) {
  const std::int64_t m = p.order;
  if (m > 500)
    throw std::invalid_argument("dense s_min cross-check capped at order 500");
  CompanionMatrix<T> comp(p);
  DenseMatrix<cplx> b = to_complex(comp.dense());
  const std::int64_t n = b.rows();
  for (std::int64_t i = 0; i < n; ++i) b(i, i) -= z;
  // normal matrix B^H B, then the real symmetric embedding [[Re,-Im],[Im,Re]]
  DenseMatrix<cplx> nm(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      cplx acc{};
      for (std::int64_t k = 0; k < n; ++k)
        acc += std::conj(b(k, i)) * b(k, j);
      nm(i, j) = acc;
    }
  DenseMatrix<double> emb(2 * n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) {
      emb(i, j) = nm(i, j).real();
      emb(i, n + j) = -nm(i, j).imag();
      emb(n + i, j) = nm(i, j).imag();
      emb(n + i, n + j) = nm(i, j).real();
    }
  const std::vector<double> eigs = symmetric_eigenvalues(std::move(emb));
  return std::sqrt(std::max(0.0, eigs.front()));
}

template SminResult smin_at(const QuadraticPencil<double>&, cplx, std::uint64_t);
template SminResult smin_at(const QuadraticPencil<cplx>&, cplx, std::uint64_t);
template PseudospectrumField scan(const QuadraticPencil<double>&,
                                  const ZGridSpec&, std::uint64_t, int);
template PseudospectrumField scan(const QuadraticPencil<cplx>&, const ZGridSpec&,
                                  std::uint64_t, int);
template double smin_dense(const QuadraticPencil<double>&, cplx);
template double smin_dense(const QuadraticPencil<cplx>&, cplx);

}  // namespace qps
