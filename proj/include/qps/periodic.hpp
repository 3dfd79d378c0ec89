#pragma once

#include <span>
#include <vector>

#include "qps/grid.hpp"
#include "qps/pencil.hpp"
#include "qps/sparse.hpp"

namespace qps::periodic {

// Advection coefficient a_j(x_j): either a constant or an L-periodic sinusoid
// a(t) = amplitude * sin(frequency * t).
struct Coefficient {
  enum class Kind { constant, sinusoid };
  Kind kind = Kind::constant;
  double value = 1.0;      // constant case
  double amplitude = 1.0;  // sinusoid case
  double frequency = 1.0;

  static Coefficient constant(double v);
  static Coefficient sinusoid(double amplitude = 1.0, double frequency = 1.0);

  double operator()(double t) const;
  bool is_constant() const { return kind == Kind::constant; }
};

// Checks finiteness and, for sinusoids, L-periodicity (frequency*L must be a
// multiple of 2*pi to within 1e-12). Throws std::invalid_argument.
void validate_coefficient(const Coefficient& c, double period);

// Negated Laplacian with circulant wrap-around: 2*dim/h^2 on the diagonal,
// -1/h^2 at the 2*dim periodic neighbors. Positive semidefinite, constant
// vector in the kernel. (Opposite sign convention from the Dirichlet module:
// this already is h0 = -laplacian.)
RealSparse assemble_laplacian(const GridSpec& g);

// h1 = 1/(2ih) * sum_j A_j, where A_j takes the centered difference along
// axis j with wrap-around and scales each row by a_j at that row's own j-th
// coordinate. Hermitian iff all coefficients are constant.
ComplexSparse assemble_advection(const GridSpec& g,
                                 std::span<const Coefficient> coeffs);

struct PencilConfig {
  GridSpec grid;
  std::vector<Coefficient> coefficients;  // one per dimension
};

ComplexPencil assemble_pencil(const PencilConfig& cfg);

// Values of constant coefficients; throws if any coefficient is not constant.
// Bridges the assembled problem to the dispersion oracles.
std::vector<double> constant_values(std::span<const Coefficient> coeffs);

}  // namespace qps::periodic
