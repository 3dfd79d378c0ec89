#include "qps/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qps {

std::int64_t GridSpec::total_points() const {
  std::int64_t t = 1;
  for (int d = 0; d < dim; ++d) t *= n_points;
  return t;
}

double GridSpec::axis_coord(int i) const {
  if (kind == GridKind::dirichlet_box) return -extent + i * spacing;
  return origin + i * spacing;
}

std::int64_t GridSpec::flat_index(const std::array<int, 3>& multi) const {
  std::int64_t f = 0;
  for (int d = dim - 1; d >= 0; --d) {
    if (multi[d] < 0 || multi[d] >= n_points)
      throw std::out_of_range("grid multi-index out of range");
    f = f * n_points + multi[d];
  }
  return f;
}

std::array<int, 3> GridSpec::multi_index(std::int64_t flat) const {
  if (flat < 0 || flat >= total_points())
    throw std::out_of_range("grid flat index out of range");
  std::array<int, 3> m{0, 0, 0};
  for (int d = 0; d < dim; ++d) {
    m[d] = static_cast<int>(flat % n_points);
    flat /= n_points;
  }
  return m;
}

std::array<double, 3> GridSpec::node_coords(std::int64_t flat) const {
  const std::array<int, 3> m = multi_index(flat);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) x[d] = axis_coord(m[d]);
  return x;
}

GridSpec make_grid(int dim, GridKind kind, double extent, int n_points,
                   double origin) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("grid dim must be 1, 2 or 3, got " +
                                std::to_string(dim));
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw std::invalid_argument("grid extent must be positive and finite");
  if (n_points < 3)
    throw std::invalid_argument("grid needs at least 3 points per axis, got " +
                                std::to_string(n_points));
  if (kind == GridKind::dirichlet_box && origin != 0.0)
    throw std::invalid_argument("origin offset only applies to periodic grids");

  GridSpec g;
  g.dim = dim;
  g.kind = kind;
  g.extent = extent;
  g.n_points = n_points;
  g.origin = origin;
  g.spacing = (kind == GridKind::dirichlet_box)
                  ? 2.0 * extent / static_cast<double>(n_points - 1)
                  : extent / static_cast<double>(n_points);
  return g;
}

}  // namespace qps
