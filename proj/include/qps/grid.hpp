#pragma once

#include <array>
#include <cstdint>

namespace qps {

enum class GridKind { dirichlet_box, periodic_torus };

// Uniform tensor-product grid, either on the box [-L, L]^dim with Dirichlet
// data assumed zero outside, or on the torus of period L per axis.
//
// Flat indices are 0-based and run x-fastest: in 2D node (i, j) maps to
// j*N + i, in 3D node (i, j, k) maps to (k*N + j)*N + i.
struct GridSpec {
  int dim = 2;
  GridKind kind = GridKind::dirichlet_box;
  double extent = 1.0;  // Dirichlet: half-width L; periodic: period length L
  int n_points = 3;     // nodes per axis
  double spacing = 0.0;
  double origin = 0.0;  // periodic only: coordinate of node 0 (default 0)

  std::int64_t total_points() const;

  // Coordinate of node index i in [0, n_points) along any axis.
  double axis_coord(int i) const;

  std::int64_t flat_index(const std::array<int, 3>& multi) const;
  std::array<int, 3> multi_index(std::int64_t flat) const;  // unused axes are 0

  // Coordinates of a node by flat index; entries past dim are 0.
  std::array<double, 3> node_coords(std::int64_t flat) const;
};

// Validates and derives the spacing:
//   Dirichlet box:  h = 2L/(N-1), nodes -L, -L+h, ..., +L
//   periodic torus: h = L/N, nodes origin, origin+h, ..., origin+(N-1)h
// Throws std::invalid_argument on dim outside {1,2,3}, extent <= 0, N < 3,
// or a nonzero origin on a Dirichlet grid.
GridSpec make_grid(int dim, GridKind kind, double extent, int n_points,
                   double origin = 0.0);

}  // namespace qps
