#pragma once

#include "qps/grid.hpp"
#include "qps/pencil.hpp"
#include "qps/sparse.hpp"

namespace qps::dirichlet {

// Discrete Laplacian on the box grid with ghost-zero closure: interior rows
// carry -2*dim/h^2 on the diagonal and 1/h^2 at each axis neighbor; rows at
// the box faces simply omit the out-of-range neighbors. Note the sign: this
// is the (negative semidefinite) Laplacian itself, not its negation.
RealSparse assemble_laplacian(const GridSpec& g);

// diag(|x|^power) with |x|^2 = sum of squared node coordinates; power in {2,4}.
RealSparse assemble_potential(const GridSpec& g, int power);

struct PencilConfig {
  GridSpec grid;
  double coupling = 1.0;  // c in h1 = -2c diag(|x|^2)
};

// h0 = -laplacian + diag(|x|^4), h1 = -2c diag(|x|^2).
RealPencil assemble_pencil(const PencilConfig& cfg);

}  // namespace qps::dirichlet
