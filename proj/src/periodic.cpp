#include "qps/periodic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qps::periodic {

namespace {

void require_torus(const GridSpec& g) {
  if (g.kind != GridKind::periodic_torus)
    throw std::invalid_argument("operation requires a periodic torus grid");
}

}  // namespace

Coefficient Coefficient::constant(double v) {
  Coefficient c;
  c.kind = Kind::constant;
  c.value = v;
  return c;
}

Coefficient Coefficient::sinusoid(double amplitude, double frequency) {
  Coefficient c;
  c.kind = Kind::sinusoid;
  c.amplitude = amplitude;
  c.frequency = frequency;
  return c;
}

double Coefficient::operator()(double t) const {
  return kind == Kind::constant ? value : amplitude * std::sin(frequency * t);
}

void validate_coefficient(const Coefficient& c, double period) {
  if (c.kind == Coefficient::Kind::constant) {
    if (!std::isfinite(c.value))
      throw std::invalid_argument("constant coefficient must be finite");
    return;
  }
  if (!std::isfinite(c.amplitude) || !std::isfinite(c.frequency))
    throw std::invalid_argument("sinusoid parameters must be finite");
  const double cycles = c.frequency * period / (2.0 * std::numbers::pi);
  if (std::abs(cycles - std::round(cycles)) > 1e-12)
    throw std::invalid_argument(
        "sinusoid coefficient is not periodic with the grid period");
}

RealSparse assemble_laplacian(const GridSpec& g) {
  require_torus(g);
  const std::int64_t total = g.total_points();
  const double inv_h2 = 1.0 / (g.spacing * g.spacing);
  RealSparse h0(total, SymmetryHint::symmetric);
  for (std::int64_t f = 0; f < total; ++f) {
    auto m = g.multi_index(f);
    h0.add(f, f, 2.0 * g.dim * inv_h2);
    for (int d = 0; d < g.dim; ++d) {
      for (int step : {-1, 1}) {
        auto nb = m;
        nb[d] = (nb[d] + step + g.n_points) % g.n_points;
        h0.add(f, g.flat_index(nb), -inv_h2);
      }
    }
  }
  h0.finalize();
  return h0;
}

ComplexSparse assemble_advection(const GridSpec& g,
                                 std::span<const Coefficient> coeffs) {
  require_torus(g);
  if (static_cast<int>(coeffs.size()) != g.dim)
    throw std::invalid_argument("need exactly one coefficient per dimension");
  bool all_constant = true;
  for (const Coefficient& c : coeffs) {
    validate_coefficient(c, g.extent);
    all_constant = all_constant && c.is_constant();
  }

  const std::int64_t total = g.total_points();
  // 1/(2ih) = -i/(2h)
  const cplx scale = cplx(0.0, -1.0) / (2.0 * g.spacing);
  ComplexSparse h1(total, all_constant ? SymmetryHint::hermitian
                                       : SymmetryHint::general);
  for (std::int64_t f = 0; f < total; ++f) {
    auto m = g.multi_index(f);
    for (int d = 0; d < g.dim; ++d) {
      const double a = coeffs[d](g.axis_coord(m[d]));
      if (a == 0.0) continue;
      for (int step : {-1, 1}) {
        auto nb = m;
        nb[d] = (nb[d] + step + g.n_points) % g.n_points;
        h1.add(f, g.flat_index(nb), static_cast<double>(step) * a * scale);
      }
    }
  }
  h1.finalize();
  return h1;
}

ComplexPencil assemble_pencil(const PencilConfig& cfg) {
  require_torus(cfg.grid);
  const RealSparse lap = assemble_laplacian(cfg.grid);
  ComplexSparse h0(cfg.grid.total_points(), SymmetryHint::hermitian);
  for (const auto& e : lap.entries()) h0.add(e.row, e.col, cplx(e.value, 0.0));
  h0.finalize();
  ComplexSparse h1 = assemble_advection(cfg.grid, cfg.coefficients);
  return ComplexPencil::make(std::move(h0), std::move(h1));
}

std::vector<double> constant_values(std::span<const Coefficient> coeffs) {
  std::vector<double> out;
  out.reserve(coeffs.size());
  for (const Coefficient& c : coeffs) {
    if (!c.is_constant())
      throw std::invalid_argument("expected constant coefficients");
    out.push_back(c.value);
  }
  return out;
}

}  // namespace qps::periodic
