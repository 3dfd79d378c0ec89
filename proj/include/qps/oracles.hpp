#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qps/grid.hpp"
#include "qps/util.hpp"

namespace qps::oracles {

// Ground-truth generators used to cross-check the assembled operators and
// the eigensolvers. Deliberately independent of the assembly code: everything
// here is evaluated from closed-form expressions.

// Roots of lambda^2 + lambda*sum(a_j k_j) + |k|^2 = 0, the constant-coefficient
// periodic dispersion relation. The first root takes the branch of the square
// root with nonnegative imaginary part.
std::pair<cplx, cplx> continuous_dispersion_roots(std::span<const double> a,
                                                  std::span<const int> k);

// Exact eigenvalues of the assembled constant-coefficient periodic pencil
// restricted to discrete Fourier mode m (0 <= m_j < N):
// roots of lambda^2 + sigma1*lambda + sigma2 with
//   sigma1 = sum_j a_j sin(2 pi m_j / N) / h
//   sigma2 = sum_j (2 - 2 cos(2 pi m_j / N)) / h^2.
std::pair<cplx, cplx> discrete_dispersion_roots(int n_points, double spacing,
                                                std::span<const double> a,
                                                std::span<const int> m);
std::pair<cplx, cplx> discrete_dispersion_roots(const GridSpec& g,
                                                std::span<const double> a,
                                                std::span<const int> m);

// Union of discrete_dispersion_roots over all N^dim modes (2 N^dim values).
std::vector<cplx> discrete_dispersion_spectrum(const GridSpec& g,
                                               std::span<const double> a);

// Spectrum of the companion matrix when the linear term vanishes:
// {+i sqrt(mu), -i sqrt(mu)} for each mu in the (nonnegative) input.
std::vector<cplx> c0_spectrum(std::span<const double> h0_eigs);

// All eigenvalues of the negated discrete Dirichlet Laplacian with ghost-zero
// closure: sums over axes of (4/h^2) sin^2(p pi / (2(N+1))), p = 1..N.
// Returned sorted ascending.
std::vector<double> dirichlet_laplacian_eigs(int dim, int n_points,
                                             double spacing);
std::vector<double> dirichlet_laplacian_eigs(const GridSpec& g);

}  // namespace qps::oracles
