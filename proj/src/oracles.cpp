#include "qps/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qps::oracles {

namespace {

// Roots of lambda^2 + s*lambda + q = 0 for real s, q. "+" branch uses the
// square root with nonnegative imaginary part.
std::pair<cplx, cplx> quadratic_roots(double s, double q) {
  const double disc = s * s - 4.0 * q;
  cplx root;
  if (disc >= 0.0)
    root = cplx(std::sqrt(disc), 0.0);
  else
    root = cplx(0.0, std::sqrt(-disc));
  return {(-s + root) / 2.0, (-s - root) / 2.0};
}

}  // namespace

std::pair<cplx, cplx> continuous_dispersion_roots(std::span<const double> a,
                                                  std::span<const int> k) {
  if (a.size() != k.size())
    throw std::invalid_argument("coefficient and wavevector sizes differ");
  double s = 0.0, k2 = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    s += a[j] * k[j];
    k2 += static_cast<double>(k[j]) * k[j];
  }
  return quadratic_roots(s, k2);
}

std::pair<cplx, cplx> discrete_dispersion_roots(int n_points, double spacing,
                                                std::span<const double> a,
                                                std::span<const int> m) {
  if (a.size() != m.size())
    throw std::invalid_argument("coefficient and mode sizes differ");
  if (n_points < 1 || spacing <= 0.0)
    throw std::invalid_argument("bad grid parameters for dispersion roots");
  const double two_pi = 2.0 * std::numbers::pi;
  double sigma1 = 0.0, sigma2 = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (m[j] < 0 || m[j] >= n_points)
      throw std::invalid_argument("Fourier mode index out of range");
    const double theta = two_pi * m[j] / n_points;
    sigma1 += a[j] * std::sin(theta) / spacing;
    sigma2 += (2.0 - 2.0 * std::cos(theta)) / (spacing * spacing);
  }
  return quadratic_roots(sigma1, sigma2);
}

std::pair<cplx, cplx> discrete_dispersion_roots(const GridSpec& g,
                                                std::span<const double> a,
                                                std::span<const int> m) {
  if (g.kind != GridKind::periodic_torus)
    throw std::invalid_argument("dispersion roots need a periodic grid");
  if (static_cast<int>(a.size()) != g.dim)
    throw std::invalid_argument("one coefficient per dimension required");
  return discrete_dispersion_roots(g.n_points, g.spacing, a, m);
}

std::vector<cplx> discrete_dispersion_spectrum(const GridSpec& g,
                                               std::span<const double> a) {
  if (g.kind != GridKind::periodic_torus)
    throw std::invalid_argument("dispersion spectrum needs a periodic grid");
  if (static_cast<int>(a.size()) != g.dim)
    throw std::invalid_argument("one coefficient per dimension required");
  std::vector<cplx> out;
  out.reserve(2 * static_cast<std::size_t>(g.total_points()));
  std::array<int, 3> m{0, 0, 0};
  const std::int64_t total = g.total_points();
  for (std::int64_t f = 0; f < total; ++f) {
    std::int64_t rest = f;
    for (int d = 0; d < g.dim; ++d) {
      m[d] = static_cast<int>(rest % g.n_points);
      rest /= g.n_points;
    }
    auto [r1, r2] = discrete_dispersion_roots(
        g.n_points, g.spacing, a, std::span<const int>(m.data(), a.size()));
    out.push_back(r1);
    out.push_back(r2);
  }
  return out;
}

std::vector<cplx> c0_spectrum(std::span<const double> h0_eigs) {
  std::vector<cplx> out;
  out.reserve(2 * h0_eigs.size());
  for (double mu : h0_eigs) {
    if (mu < 0.0)
      throw std::invalid_argument("c0_spectrum needs nonnegative input");
    const double r = std::sqrt(mu);
    out.emplace_back(0.0, r);
    out.emplace_back(0.0, -r);
  }
  return out;
}

std::vector<double> dirichlet_laplacian_eigs(int dim, int n_points,
                                             double spacing) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("dim must be 1, 2 or 3");
  if (n_points < 1 || spacing <= 0.0)
    throw std::invalid_argument("bad grid parameters");
  std::vector<double> axis(n_points);
  const double scale = 4.0 / (spacing * spacing);
  for (int p = 1; p <= n_points; ++p) {
    const double s = std::sin(p * std::numbers::pi / (2.0 * (n_points + 1)));
    axis[p - 1] = scale * s * s;
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::pow(n_points, dim)));
  if (dim == 1) {
    out = axis;
  } else if (dim == 2) {
    for (double a : axis)
      for (double b : axis) out.push_back(a + b);
  } else {
    for (double a : axis)
      for (double b : axis)
        for (double c : axis) out.push_back(a + b + c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> dirichlet_laplacian_eigs(const GridSpec& g) {
  if (g.kind != GridKind::dirichlet_box)
    throw std::invalid_argument("Dirichlet Laplacian oracle needs a box grid");
  return dirichlet_laplacian_eigs(g.dim, g.n_points, g.spacing);
}

}  // namespace qps::oracles
