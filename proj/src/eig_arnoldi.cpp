#include "qps/eig_arnoldi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qps/eig_dense.hpp"

namespace qps {

namespace {

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

}  // namespace

// Explicitly restarted shift-invert Arnoldi with Schur-vector locking. The
// Krylov recurrence runs in the orthogonal complement of the locked basis Q,
// which is invariant because locking extends a partial Schur decomposition
// A Q = Q T. A Ritz pair (lambda, q) of the deflated operator is accepted
// when || (I - QQ^H) A q - lambda q || meets the tolerance; eigenvectors are
// reconstructed from T at the end and certified against A directly.
template <class T>
ArnoldiResult arnoldi_shift_invert(const QuadraticPencil<T>& p,
                                   const ArnoldiConfig& cfg) {
  const std::int64_t n = 2 * p.order;
  const int m = cfg.subspace;
  const int k = cfg.wanted;
  if (k < 1 || k >= m || m > n)
    throw std::invalid_argument("arnoldi needs 1 <= wanted < subspace <= 2M");
  if (!(cfg.tolerance > 0.0))
    throw std::invalid_argument("arnoldi tolerance must be positive");

  ShiftedSolver<T> solver(p, cfg.shift);
  if (solver.singular())
    throw std::runtime_error("arnoldi shift is a (near-)eigenvalue");

  CompanionMatrix<T> comp(p);
  const double anorm_est = p.companion_norm();
  const double accept = cfg.tolerance * anorm_est;

  struct Locked {
    cplx lambda;
    std::vector<cplx> schur;
    double ext_res;  // Schur-extension residual at lock time
  };
  std::vector<Locked> locked;

  ArnoldiResult out;
  std::vector<std::vector<cplx>> basis;
  std::vector<cplx> work(n), applied(n);

  std::uint64_t rng_salt = 0;
  std::vector<cplx> start = seeded_unit_vector(n, cfg.seed);

  auto project_out_locked = [&](std::span<cplx> w) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Locked& lk : locked) axpy(-dot(lk.schur, w), lk.schur, w);
  };

  for (int cycle = 0; cycle <= cfg.max_restarts; ++cycle) {
    out.restarts = cycle;
    project_out_locked(std::span<cplx>(start));
    double snorm = norm2(std::span<const cplx>(start));
    if (snorm < 1e-12) {
      start = seeded_unit_vector(n, cfg.seed + (++rng_salt));
      project_out_locked(std::span<cplx>(start));
      snorm = norm2(std::span<const cplx>(start));
    }
    for (auto& z : start) z /= snorm;

    basis.assign(1, start);
    DenseMatrix<cplx> hmat(m + 1, m);
    int steps = 0;
    for (int j = 0; j < m; ++j) {
      solver.solve(std::span<const cplx>(basis[j]), std::span<cplx>(work));
      ++out.op_applications;
      const double before = norm2(std::span<const cplx>(work));
      // twice-is-enough modified Gram-Schmidt against locked + basis
      for (int pass = 0; pass < 2; ++pass) {
        project_out_locked(std::span<cplx>(work));
        for (int i = 0; i <= j; ++i) {
          const cplx hij = dot(basis[i], work);
          hmat(i, j) += hij;
          axpy(-hij, basis[i], std::span<cplx>(work));
        }
      }
      double after = norm2(std::span<const cplx>(work));
      steps = j + 1;
      if (after <= 1e-12 * std::max(before, 1e-300)) {
        // invariant subspace found; record an exact deflation and continue
        // in a fresh random direction unless the space is exhausted
        hmat(j + 1, j) = cplx{};
        if (j + 1 == m) break;
        if (static_cast<std::int64_t>(locked.size() + basis.size()) >= n) break;
        bool replaced = false;
        for (int tries = 0; tries < 3 && !replaced; ++tries) {
          work = seeded_unit_vector(n, cfg.seed + (++rng_salt));
          for (int pass = 0; pass < 2; ++pass) {
            project_out_locked(std::span<cplx>(work));
            for (int i = 0; i <= j; ++i)
              axpy(-dot(basis[i], work), basis[i], std::span<cplx>(work));
          }
          after = norm2(std::span<const cplx>(work));
          replaced = after > 1e-8;
        }
        if (!replaced) break;
      } else {
        hmat(j + 1, j) = after;
        if (j + 1 == m) break;
      }
      std::vector<cplx> next = work;
      for (auto& z : next) z /= after;
      basis.push_back(std::move(next));
    }

    // Ritz extraction from the leading steps x steps block
    DenseMatrix<cplx> hsub(steps, steps);
    for (int i = 0; i < steps; ++i)
      for (int j = 0; j < steps; ++j) hsub(i, j) = hmat(i, j);
    SpectrumResult ritz = qr_eigenvalues(hsub);

    std::vector<std::size_t> order(ritz.eigenvalues.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(ritz.eigenvalues[a]) > std::abs(ritz.eigenvalues[b]);
    });

    std::vector<cplx> best_unconverged;
    int misses = 0;
    for (std::size_t oi : order) {
      if (static_cast<int>(locked.size()) >= k) break;
      if (misses >= 6) break;  // remaining Ritz values sit farther out
      const cplx theta = ritz.eigenvalues[oi];
      if (std::abs(theta) < 1e-300) continue;
      InverseIterationResult small = eigenvector(hsub, theta);
      std::vector<cplx> q(n, cplx{});
      for (int i = 0; i < steps; ++i)
        axpy(small.vector[i], basis[i], std::span<cplx>(q));
      const double qn = norm2(std::span<const cplx>(q));
      if (!(qn > 0.0)) continue;
      for (auto& z : q) z /= qn;

      const cplx lambda = cfg.shift + 1.0 / theta;
      comp.apply(std::span<const cplx>(q), std::span<cplx>(applied));
      for (const Locked& lk : locked)
        axpy(-dot(lk.schur, applied), lk.schur, std::span<cplx>(applied));
      double ext = 0.0;
      for (std::int64_t i = 0; i < n; ++i)
        ext += std::norm(applied[i] - lambda * q[i]);
      ext = std::sqrt(ext);

      if (ext > accept) {
        ++misses;
        if (best_unconverged.empty()) best_unconverged = std::move(q);
        continue;
      }
      locked.push_back({lambda, std::move(q), ext});
    }
    if (std::getenv("QPS_ARNOLDI_DEBUG"))
      std::fprintf(stderr, "cycle %d: steps=%d locked=%zu\n", cycle, steps,
                   locked.size());
    if (static_cast<int>(locked.size()) >= k) break;
    if (!best_unconverged.empty())
      start = std::move(best_unconverged);
    else
      start = seeded_unit_vector(n, cfg.seed + (++rng_salt));
  }

  // nearest-to-shift first (shift-inverted ordering); keep Schur order
  // within the reconstruction below, sort only the emitted list
  const int found = static_cast<int>(locked.size());

  // Rayleigh block T = Q^H A Q (upper triangular up to the tolerance)
  DenseMatrix<cplx> tmat(found, found);
  for (int j = 0; j < found; ++j) {
    comp.apply(std::span<const cplx>(locked[j].schur), std::span<cplx>(applied));
    for (int i = 0; i < found; ++i)
      tmat(i, j) = dot(locked[i].schur, std::span<const cplx>(applied));
  }

  struct Final {
    cplx lambda;
    std::vector<cplx> vec;
    double rres;
    bool ok;
  };
  std::vector<Final> finals;
  for (int i = 0; i < found; ++i) {
    const cplx lambda = locked[i].lambda;
    // eigenvector from the partial Schur form: x = Q y with y from the
    // triangular solve (T(0:i,0:i) - lambda I) y = -T(0:i,i), y_i = 1
    std::vector<cplx> y(i + 1, cplx{});
    y[i] = 1.0;
    for (int r = i - 1; r >= 0; --r) {
      cplx rhs = -tmat(r, i);
      for (int c = r + 1; c < i; ++c) rhs -= tmat(r, c) * y[c];
      cplx denom = tmat(r, r) - lambda;
      const double floor = 1e-10 * (1.0 + std::abs(lambda));
      if (std::abs(denom) < floor) denom = floor;  // clustered eigenvalue
      y[r] = rhs / denom;
    }
    std::vector<cplx> x(n, cplx{});
    for (int r = 0; r <= i; ++r)
      axpy(y[r], locked[r].schur, std::span<cplx>(x));
    const double xn = norm2(std::span<const cplx>(x));
    for (auto& z : x) z /= xn;
    comp.apply(std::span<const cplx>(x), std::span<cplx>(applied));
    double rs = 0.0;
    for (std::int64_t t = 0; t < n; ++t)
      rs += std::norm(applied[t] - lambda * x[t]);
    rs = std::sqrt(rs);
    if (rs > accept) {
      // clustered block made the back-substitution inaccurate; polish with
      // inverse iteration through the banded solver
      try {
        EigenPair ep = certify_eigenpair(p, lambda, cfg.seed);
        std::vector<cplx> full(n);
        for (std::int64_t t = 0; t < p.order; ++t) {
          full[t] = ep.vector[t];
          full[p.order + t] = lambda * ep.vector[t];
        }
        const double fn = norm2(std::span<const cplx>(full));
        for (auto& z : full) z /= fn;
        comp.apply(std::span<const cplx>(full), std::span<cplx>(applied));
        double rs2 = 0.0;
        for (std::int64_t t = 0; t < n; ++t)
          rs2 += std::norm(applied[t] - lambda * full[t]);
        rs2 = std::sqrt(rs2);
        if (rs2 < rs) {
          x = std::move(full);
          rs = rs2;
        }
      } catch (const std::exception&) {
        // keep the reconstructed vector
      }
    }
    finals.push_back({lambda, std::move(x), rs, rs <= accept});
  }

  std::sort(finals.begin(), finals.end(), [&](const Final& a, const Final& b) {
    return std::abs(a.lambda - cfg.shift) < std::abs(b.lambda - cfg.shift);
  });
  if (static_cast<int>(finals.size()) > k) finals.resize(k);

  for (auto& f : finals) {
    out.eigenvalues.push_back(f.lambda);
    out.ritz_residuals.push_back(f.rres);
    out.vectors.push_back(std::move(f.vec));
    out.converged.push_back(f.ok ? 1 : 0);
  }
  // pad with explicit non-converged markers if the budget ran out
  for (int i = static_cast<int>(out.eigenvalues.size()); i < k; ++i) {
    out.eigenvalues.push_back(cplx{});
    out.ritz_residuals.push_back(std::numeric_limits<double>::infinity());
    out.vectors.emplace_back();
    out.converged.push_back(0);
  }
  return out;
}

template ArnoldiResult arnoldi_shift_invert(const QuadraticPencil<double>&,
                                            const ArnoldiConfig&);
template ArnoldiResult arnoldi_shift_invert(const QuadraticPencil<cplx>&,
                                            const ArnoldiConfig&);

}  // namespace qps
