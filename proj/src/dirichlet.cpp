#include "qps/dirichlet.hpp"

#include <cmath>
#include <stdexcept>

namespace qps::dirichlet {

namespace {

void require_box(const GridSpec& g) {
  if (g.kind != GridKind::dirichlet_box)
    throw std::invalid_argument("operation requires a Dirichlet box grid");
}

}  // namespace

RealSparse assemble_laplacian(const GridSpec& g) {
  require_box(g);
  const std::int64_t total = g.total_points();
  const double inv_h2 = 1.0 / (g.spacing * g.spacing);
  RealSparse lap(total, SymmetryHint::symmetric);
  for (std::int64_t f = 0; f < total; ++f) {
    auto m = g.multi_index(f);
    lap.add(f, f, -2.0 * g.dim * inv_h2);
    for (int d = 0; d < g.dim; ++d) {
      for (int step : {-1, 1}) {
        auto nb = m;
        nb[d] += step;
        if (nb[d] < 0 || nb[d] >= g.n_points) continue;  // ghost node, u = 0
        lap.add(f, g.flat_index(nb), inv_h2);
      }
    }
  }
  lap.finalize();
  return lap;
}

RealSparse assemble_potential(const GridSpec& g, int power) {
  require_box(g);
  if (power != 2 && power != 4)
    throw std::invalid_argument("potential power must be 2 or 4");
  const std::int64_t total = g.total_points();
  RealSparse pot(total, SymmetryHint::symmetric);
  for (std::int64_t f = 0; f < total; ++f) {
    const auto x = g.node_coords(f);
    double r2 = 0.0;
    for (int d = 0; d < g.dim; ++d) r2 += x[d] * x[d];
    pot.add(f, f, power == 2 ? r2 : r2 * r2);
  }
  pot.finalize();
  return pot;
}

RealPencil assemble_pencil(const PencilConfig& cfg) {
  require_box(cfg.grid);
  const std::int64_t total = cfg.grid.total_points();

  const RealSparse lap = assemble_laplacian(cfg.grid);
  const RealSparse quartic = assemble_potential(cfg.grid, 4);
  RealSparse h0(total, SymmetryHint::symmetric);
  for (const auto& e : lap.entries()) h0.add(e.row, e.col, -e.value);
  for (const auto& e : quartic.entries()) h0.add(e.row, e.col, e.value);
  h0.finalize();

  RealSparse h1(total, SymmetryHint::symmetric);
  if (cfg.coupling != 0.0) {
    const RealSparse quadratic = assemble_potential(cfg.grid, 2);
    for (const auto& e : quadratic.entries())
      h1.add(e.row, e.col, -2.0 * cfg.coupling * e.value);
  }
  h1.finalize();

  return RealPencil::make(std::move(h0), std::move(h1));
}

}  // namespace qps::dirichlet
