#include "qps/eig_dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qps {

namespace {

constexpr double kDeflationEps = 1e-14;

void sort_canonical(SpectrumResult& r) {
  const std::size_t n = r.eigenvalues.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return canonical_less(r.eigenvalues[a], r.eigenvalues[b]);
  });
  SpectrumResult out;
  out.eigenvalues.reserve(n);
  out.converged.reserve(n);
  out.iterations.reserve(n);
  out.total_iterations = r.total_iterations;
  for (std::size_t k : idx) {
    out.eigenvalues.push_back(r.eigenvalues[k]);
    out.converged.push_back(r.converged[k]);
    out.iterations.push_back(r.iterations[k]);
  }
  r = std::move(out);
}

template <class T>
std::vector<double> balance_impl(DenseMatrix<T>& a) {
  const std::int64_t n = a.rows();
  if (a.rows() != a.cols()) throw std::invalid_argument("balance needs square");
  std::vector<double> scale(n, 1.0);
  constexpr double radix = 2.0, b2 = radix * radix;
  bool noconv = true;
  while (noconv) {
    noconv = false;
    for (std::int64_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::int64_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= b2;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= b2;
      }
      if ((c + r) / f < 0.95 * s) {
        g = 1.0 / f;
        scale[i] *= f;
        noconv = true;
        for (std::int64_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::int64_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
  return scale;
}

template <class T>
T phase_of(const T& x) {
  if constexpr (std::is_same_v<T, cplx>) {
    const double m = std::abs(x);
    return m == 0.0 ? cplx(1.0, 0.0) : x / m;
  } else {
    return x >= 0.0 ? 1.0 : -1.0;
  }
}

template <class T>
T conj_of(const T& x) {
  if constexpr (std::is_same_v<T, cplx>)
    return std::conj(x);
  else
    return x;
}

template <class T>
HessenbergResult<T> hessenberg_impl(DenseMatrix<T> a, bool want_q) {
  const std::int64_t n = a.rows();
  if (a.rows() != a.cols())
    throw std::invalid_argument("hessenberg needs square");
  std::vector<std::vector<T>> vs(n > 2 ? n - 2 : 0);
  std::vector<double> taus(n > 2 ? n - 2 : 0, 0.0);

  for (std::int64_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::int64_t i = k + 2; i < n; ++i) tail += std::norm(a(i, k));
    if (tail == 0.0) continue;  // column already in Hessenberg shape
    double xnorm = tail + std::norm(a(k + 1, k));
    xnorm = std::sqrt(xnorm);

    const T alpha = -phase_of(a(k + 1, k)) * xnorm;
    std::vector<T> v(n - k - 1);
    v[0] = a(k + 1, k) - alpha;
    for (std::int64_t i = k + 2; i < n; ++i) v[i - k - 1] = a(i, k);
    double vsq = 0.0;
    for (const T& x : v) vsq += std::norm(x);
    const double tau = 2.0 / vsq;

    // left: rows k+1..n-1
    for (std::int64_t j = k; j < n; ++j) {
      T w{};
      for (std::size_t i = 0; i < v.size(); ++i)
        w += conj_of(v[i]) * a(k + 1 + i, j);
      w *= tau;
      for (std::size_t i = 0; i < v.size(); ++i) a(k + 1 + i, j) -= w * v[i];
    }
    // right: columns k+1..n-1
    for (std::int64_t i = 0; i < n; ++i) {
      T w{};
      for (std::size_t j = 0; j < v.size(); ++j) w += a(i, k + 1 + j) * v[j];
      w *= tau;
      for (std::size_t j = 0; j < v.size(); ++j)
        a(i, k + 1 + j) -= w * conj_of(v[j]);
    }
    a(k + 1, k) = alpha;
    for (std::int64_t i = k + 2; i < n; ++i) a(i, k) = T{};
    vs[k] = std::move(v);
    taus[k] = tau;
  }
  // store exact zeros below the subdiagonal
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j + 1 < i; ++j) a(i, j) = T{};

  HessenbergResult<T> out{std::move(a), DenseMatrix<T>()};
  if (want_q) {
    DenseMatrix<T> q = DenseMatrix<T>::identity(n);
    for (std::int64_t k = n - 3; k >= 0; --k) {
      if (taus[k] == 0.0) continue;
      const auto& v = vs[k];
      for (std::int64_t j = k + 1; j < n; ++j) {
        T w{};
        for (std::size_t i = 0; i < v.size(); ++i)
          w += conj_of(v[i]) * q(k + 1 + i, j);
        w *= taus[k];
        for (std::size_t i = 0; i < v.size(); ++i) q(k + 1 + i, j) -= w * v[i];
      }
    }
    out.q = std::move(q);
  }
  return out;
}

}  // namespace

std::vector<double> balance(DenseMatrix<double>& a) { return balance_impl(a); }
std::vector<double> balance(DenseMatrix<cplx>& a) { return balance_impl(a); }

HessenbergResult<double> hessenberg(DenseMatrix<double> a, bool want_q) {
  return hessenberg_impl(std::move(a), want_q);
}
HessenbergResult<cplx> hessenberg(DenseMatrix<cplx> a, bool want_q) {
  return hessenberg_impl(std::move(a), want_q);
}

// Francis double-shift QR on a real upper Hessenberg matrix, after the
// classic HQR scheme of Martin, Peters and Wilkinson. Eigenvalues only.
SpectrumResult qr_eigenvalues(DenseMatrix<double> h) {
  const std::int64_t n = h.rows();
  if (h.rows() != h.cols()) throw std::invalid_argument("qr needs square");
  SpectrumResult res;
  res.eigenvalues.assign(n, cplx{});
  res.converged.assign(n, 1);
  res.iterations.assign(n, 0);
  if (n == 0) return res;

  double norm = 0.0;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = std::max<std::int64_t>(0, i - 1); j < n; ++j)
      norm += std::abs(h(i, j));

  std::int64_t en = n - 1;
  double t = 0.0;
  std::int64_t itn = 30 * n;
  int its = 0;
  double p = 0.0, q = 0.0, r = 0.0;

  while (en >= 0) {
    // look for a negligible subdiagonal element
    std::int64_t l = en;
    for (; l > 0; --l) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = norm;
      if (std::abs(h(l, l - 1)) <= kDeflationEps * s) break;
    }
    double x = h(en, en);
    if (l == en) {  // one root
      res.eigenvalues[en] = cplx(x + t, 0.0);
      res.iterations[en] = its;
      --en;
      its = 0;
      continue;
    }
    double y = h(en - 1, en - 1);
    double w = h(en, en - 1) * h(en - 1, en);
    if (l == en - 1) {  // two roots from the trailing 2x2 block
      p = (y - x) / 2.0;
      q = p * p + w;
      double zz = std::sqrt(std::abs(q));
      x += t;
      if (q >= 0.0) {  // real pair
        zz = p + std::copysign(zz, p);
        const double r1 = x + zz;
        res.eigenvalues[en - 1] = cplx(r1, 0.0);
        res.eigenvalues[en] = cplx(zz != 0.0 ? x - w / zz : r1, 0.0);
      } else {  // complex conjugate pair
        res.eigenvalues[en - 1] = cplx(x + p, zz);
        res.eigenvalues[en] = cplx(x + p, -zz);
      }
      res.iterations[en - 1] = res.iterations[en] = its;
      en -= 2;
      its = 0;
      continue;
    }
    if (itn <= 0) {  // iteration budget exhausted: flag what is left
      for (std::int64_t i = 0; i <= en; ++i) {
        res.eigenvalues[i] = cplx(h(i, i) + t, 0.0);
        res.converged[i] = 0;
        res.iterations[i] = its;
      }
      break;
    }
    if (its == 10 || its == 20) {  // exceptional shift
      t += x;
      for (std::int64_t i = 0; i <= en; ++i) h(i, i) -= x;
      double s = std::abs(h(en, en - 1)) + std::abs(h(en - 1, en - 2));
      x = y = 0.75 * s;
      w = -0.4375 * s * s;
    }
    ++its;
    --itn;
    ++res.total_iterations;
    // look for two consecutive small subdiagonal elements
    std::int64_t m = en - 2;
    for (; m >= l; --m) {
      const double zz = h(m, m);
      r = x - zz;
      double s = y - zz;
      p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
      q = h(m + 1, m + 1) - zz - r - s;
      r = h(m + 2, m + 1);
      s = std::abs(p) + std::abs(q) + std::abs(r);
      p /= s;
      q /= s;
      r /= s;
      if (m == l) break;
      const double tst1 =
          std::abs(p) *
          (std::abs(h(m - 1, m - 1)) + std::abs(zz) + std::abs(h(m + 1, m + 1)));
      if (tst1 + std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r)) == tst1)
        break;
    }
    for (std::int64_t i = m + 2; i <= en; ++i) {
      h(i, i - 2) = 0.0;
      if (i > m + 2) h(i, i - 3) = 0.0;
    }
    // double QR sweep on rows l..en and columns m..en
    for (std::int64_t k = m; k <= en - 1; ++k) {
      const bool notlas = (k != en - 1);
      double x2 = 0.0;
      if (k != m) {
        p = h(k, k - 1);
        q = h(k + 1, k - 1);
        r = notlas ? h(k + 2, k - 1) : 0.0;
        x2 = std::abs(p) + std::abs(q) + std::abs(r);
        if (x2 == 0.0) continue;
        p /= x2;
        q /= x2;
        r /= x2;
      }
      double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
      if (k != m)
        h(k, k - 1) = -s * x2;
      else if (l != m)
        h(k, k - 1) = -h(k, k - 1);
      p += s;
      const double px = p / s, py = q / s, pz = r / s;
      q /= p;
      r /= p;
      if (!notlas) {
        for (std::int64_t j = k; j <= en; ++j) {  // row modification
          const double f = h(k, j) + q * h(k + 1, j);
          h(k, j) -= f * px;
          h(k + 1, j) -= f * py;
        }
        const std::int64_t iend = std::min(en, k + 3);
        for (std::int64_t i = l; i <= iend; ++i) {  // column modification
          const double f = px * h(i, k) + py * h(i, k + 1);
          h(i, k) -= f;
          h(i, k + 1) -= f * q;
        }
      } else {
        for (std::int64_t j = k; j <= en; ++j) {
          const double f = h(k, j) + q * h(k + 1, j) + r * h(k + 2, j);
          h(k, j) -= f * px;
          h(k + 1, j) -= f * py;
          h(k + 2, j) -= f * pz;
        }
        const std::int64_t iend = std::min(en, k + 3);
        for (std::int64_t i = l; i <= iend; ++i) {
          const double f = px * h(i, k) + py * h(i, k + 1) + pz * h(i, k + 2);
          h(i, k) -= f;
          h(i, k + 1) -= f * q;
          h(i, k + 2) -= f * r;
        }
      }
    }
  }
  sort_canonical(res);
  return res;
}

// Single-shift QR with the Wilkinson shift on a complex upper Hessenberg
// matrix; explicit shift, Givens rotations.
SpectrumResult qr_eigenvalues(DenseMatrix<cplx> h) {
  const std::int64_t n = h.rows();
  if (h.rows() != h.cols()) throw std::invalid_argument("qr needs square");
  SpectrumResult res;
  res.eigenvalues.assign(n, cplx{});
  res.converged.assign(n, 1);
  res.iterations.assign(n, 0);
  if (n == 0) return res;

  double norm = 0.0;
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = std::max<std::int64_t>(0, i - 1); j < n; ++j)
      norm += std::abs(h(i, j));

  std::vector<double> cs(n, 0.0);
  std::vector<cplx> sn(n, cplx{});

  std::int64_t en = n - 1;
  std::int64_t itn = 30 * n;
  int its = 0;

  while (en >= 0) {
    std::int64_t l = en;
    for (; l > 0; --l) {
      double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (s == 0.0) s = norm;
      if (std::abs(h(l, l - 1)) <= kDeflationEps * s) break;
    }
    if (l == en) {  // one root
      res.eigenvalues[en] = h(en, en);
      res.iterations[en] = its;
      --en;
      its = 0;
      continue;
    }
    if (itn <= 0) {
      for (std::int64_t i = 0; i <= en; ++i) {
        res.eigenvalues[i] = h(i, i);
        res.converged[i] = 0;
        res.iterations[i] = its;
      }
      break;
    }
    cplx sigma;
    if (its > 0 && its % 10 == 0) {  // exceptional shift
      double s = std::abs(h(en, en - 1));
      if (en - 2 >= l) s += std::abs(h(en - 1, en - 2));
      sigma = cplx(s, 0.0);
    } else {  // Wilkinson shift from the trailing 2x2
      const cplx a = h(en - 1, en - 1), b = h(en - 1, en);
      const cplx c = h(en, en - 1), d = h(en, en);
      const cplx delta = (a - d) / 2.0;
      const cplx disc = std::sqrt(delta * delta + b * c);
      const cplx d1 = delta + disc, d2 = delta - disc;
      const cplx denom = std::abs(d1) >= std::abs(d2) ? d1 : d2;
      sigma = denom == cplx{} ? d : d - (b * c) / denom;
    }
    ++its;
    --itn;
    ++res.total_iterations;

    for (std::int64_t i = l; i <= en; ++i) h(i, i) -= sigma;
    // QR factor by Givens rotations down the subdiagonal
    for (std::int64_t k = l; k < en; ++k) {
      const cplx f = h(k, k), g = h(k + 1, k);
      double c;
      cplx s, rr;
      if (g == cplx{}) {
        c = 1.0;
        s = cplx{};
        rr = f;
      } else if (f == cplx{}) {
        c = 0.0;
        s = std::conj(g) / std::abs(g);
        rr = std::abs(g);
      } else {
        const double fa = std::abs(f), ga = std::abs(g);
        const double tt = std::hypot(fa, ga);
        c = fa / tt;
        s = (f / fa) * std::conj(g) / tt;
        rr = (f / fa) * tt;
      }
      cs[k] = c;
      sn[k] = s;
      h(k, k) = rr;
      h(k + 1, k) = cplx{};
      for (std::int64_t j = k + 1; j <= en; ++j) {
        const cplx x = h(k, j), y = h(k + 1, j);
        h(k, j) = c * x + s * y;
        h(k + 1, j) = -std::conj(s) * x + c * y;
      }
    }
    // form R Q by applying the adjoint rotations from the right
    for (std::int64_t k = l; k < en; ++k) {
      const double c = cs[k];
      const cplx s = sn[k];
      for (std::int64_t i = l; i <= k + 1; ++i) {
        const cplx x = h(i, k), y = h(i, k + 1);
        h(i, k) = c * x + std::conj(s) * y;
        h(i, k + 1) = -s * x + c * y;
      }
    }
    for (std::int64_t i = l; i <= en; ++i) h(i, i) += sigma;
  }
  sort_canonical(res);
  return res;
}

SpectrumResult eigenvalues(DenseMatrix<double> a) {
  balance(a);
  auto hs = hessenberg(std::move(a), /*want_q=*/false);
  return qr_eigenvalues(std::move(hs.h));
}

SpectrumResult eigenvalues(DenseMatrix<cplx> a) {
  balance(a);
  auto hs = hessenberg(std::move(a), /*want_q=*/false);
  return qr_eigenvalues(std::move(hs.h));
}

namespace {

InverseIterationResult eigenvector_impl(DenseMatrix<cplx> ac, cplx lambda) {
  const std::int64_t n = ac.rows();
  const double anorm = ac.frobenius_norm();
  double delta = 1e-10 * std::max(anorm, std::numeric_limits<double>::min());

  InverseIterationResult best;
  best.residual = std::numeric_limits<double>::infinity();

  for (int attempt = 0; attempt < 4; ++attempt) {
    DenseMatrix<cplx> b = ac;
    const cplx shift = lambda + delta;
    for (std::int64_t i = 0; i < n; ++i) b(i, i) -= shift;
    DenseLU<cplx> lu(std::move(b));
    if (lu.singular()) {  // exact breakdown: retry with a larger nudge
      delta *= 100.0;
      continue;
    }
    std::vector<cplx> v = seeded_unit_vector(n, 0xE16u + attempt);
    std::vector<cplx> av(n);
    for (int step = 0; step < 5; ++step) {
      lu.solve_in_place(std::span<cplx>(v));
      const double nn = norm2(std::span<const cplx>(v));
      if (!(nn > 0.0) || !std::isfinite(nn)) break;
      for (auto& z : v) z /= nn;
      ac.apply(std::span<const cplx>(v), std::span<cplx>(av));
      double rs = 0.0;
      for (std::int64_t i = 0; i < n; ++i) rs += std::norm(av[i] - lambda * v[i]);
      rs = std::sqrt(rs);
      if (rs < best.residual) {
        best.residual = rs;
        best.vector = v;
      }
      if (rs <= 1e-14 * std::max(1.0, anorm)) break;
    }
    if (std::isfinite(best.residual)) break;
    delta *= 100.0;
  }
  if (!std::isfinite(best.residual))
    throw std::runtime_error("inverse iteration failed");
  return best;
}

}  // namespace

InverseIterationResult eigenvector(const DenseMatrix<double>& a, cplx lambda) {
  return eigenvector_impl(to_complex(a), lambda);
}
InverseIterationResult eigenvector(const DenseMatrix<cplx>& a, cplx lambda) {
  return eigenvector_impl(a, lambda);
}

// Householder tridiagonalization (lower triangle) followed by implicit-shift
// QL. Independent of the nonsymmetric path above.
std::vector<double> symmetric_eigenvalues(DenseMatrix<double> a) {
  const std::int64_t n = a.rows();
  if (a.rows() != a.cols())
    throw std::invalid_argument("symmetric solve needs square");
  std::vector<double> d(n, 0.0), e(n, 0.0);
  if (n == 0) return d;

  for (std::int64_t i = n - 1; i >= 1; --i) {
    const std::int64_t l = i - 1;
    double hh = 0.0, scale = 0.0;
    if (l > 0) {
      for (std::int64_t k = 0; k <= l; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (std::int64_t k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          hh += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(hh) : std::sqrt(hh);
        e[i] = scale * g;
        hh -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (std::int64_t j = 0; j <= l; ++j) {
          g = 0.0;
          for (std::int64_t k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (std::int64_t k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          e[j] = g / hh;
          f += e[j] * a(i, j);
        }
        const double hk = f / (hh + hh);
        for (std::int64_t j = 0; j <= l; ++j) {
          f = a(i, j);
          e[j] = g = e[j] - hk * f;
          for (std::int64_t k = 0; k <= j; ++k)
            a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
  }
  for (std::int64_t i = 0; i < n; ++i) d[i] = a(i, i);

  // implicit QL with shifts
  for (std::int64_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::int64_t l = 0; l < n; ++l) {
    int iter = 0;
    std::int64_t m;
    for (;;) {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) + dd == dd) break;
      }
      if (m == l) break;
      if (iter++ == 50)
        throw std::runtime_error("symmetric QL failed to converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::int64_t i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace qps
