#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qps/dirichlet.hpp"
#include "qps/eig_arnoldi.hpp"
#include "qps/eig_dense.hpp"

using namespace qps;

namespace {

RealPencil scalar_pencil(double h0, double h1) {
  RealSparse a0(1), a1(1);
  if (h0 != 0.0) a0.add(0, 0, h0);
  if (h1 != 0.0) a1.add(0, 0, h1);
  a0.finalize();
  a1.finalize();
  return RealPencil::make(std::move(a0), std::move(a1));
}

}  // namespace

TEST_CASE("scalar pencil: nearest root to the shift") {
  const RealPencil p = scalar_pencil(2.0, 3.0);
  ArnoldiConfig cfg;
  cfg.shift = cplx(-0.9, 0.0);
  cfg.subspace = 2;
  cfg.wanted = 1;
  const ArnoldiResult r = arnoldi_shift_invert(p, cfg);
  REQUIRE(r.eigenvalues.size() == 1);
  CHECK(r.converged[0]);
  CHECK(r.eigenvalues[0].real() == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(std::abs(r.eigenvalues[0].imag()) < 1e-10);
}

TEST_CASE("config validation") {
  const RealPencil p = scalar_pencil(2.0, 3.0);
  ArnoldiConfig cfg;
  cfg.subspace = 2;
  cfg.wanted = 2;  // k must stay below m
  CHECK_THROWS_AS(arnoldi_shift_invert(p, cfg), std::invalid_argument);
  cfg.subspace = 3;  // m must stay within 2M
  cfg.wanted = 1;
  CHECK_THROWS_AS(arnoldi_shift_invert(p, cfg), std::invalid_argument);
  cfg.subspace = 2;
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(arnoldi_shift_invert(p, cfg), std::invalid_argument);
}

TEST_CASE("shifting onto an eigenvalue is reported") {
  const RealPencil p = scalar_pencil(2.0, 3.0);
  ArnoldiConfig cfg;
  cfg.shift = cplx(-1.0, 0.0);
  cfg.subspace = 2;
  cfg.wanted = 1;
  CHECK_THROWS_AS(arnoldi_shift_invert(p, cfg), std::runtime_error);
}

TEST_CASE("c=0 pencil: eigenvalues near the shift are purely imaginary") {
  const GridSpec g = make_grid(2, GridKind::dirichlet_box, 1.0, 10);
  const RealPencil p = dirichlet::assemble_pencil({g, 0.0});
  // median of sqrt(spec(h0)) ~ mid-range of the imaginary branch
  DenseMatrix<double> h0(p.order);
  for (const auto& e : p.h0.entries()) h0(e.row, e.col) = e.value;
  const auto mus = symmetric_eigenvalues(std::move(h0));
  const double median = std::sqrt(mus[mus.size() / 2]);

  ArnoldiConfig cfg;
  cfg.shift = cplx(0.0, median) + cplx(0.05, 0.0);  // just off the axis
  cfg.subspace = 40;
  cfg.wanted = 10;
  const ArnoldiResult r = arnoldi_shift_invert(p, cfg);
  REQUIRE(r.all_converged());
  for (const cplx& z : r.eigenvalues) CHECK(std::abs(z.real()) < 1e-8);

  // re-verify each returned pair by applying the implicit companion
  CompanionMatrix<double> comp(p);
  std::vector<cplx> applied(2 * p.order);
  for (std::size_t i = 0; i < r.vectors.size(); ++i) {
    comp.apply(std::span<const cplx>(r.vectors[i]), std::span<cplx>(applied));
    double rs = 0.0;
    for (std::size_t t = 0; t < applied.size(); ++t)
      rs += std::norm(applied[t] - r.eigenvalues[i] * r.vectors[i][t]);
    CHECK(std::sqrt(rs) <= cfg.tolerance * p.companion_norm());
  }
}

TEST_CASE("arnoldi agrees with the dense path near a shift") {
  const GridSpec g = make_grid(2, GridKind::dirichlet_box, 1.0, 10);
  const RealPencil p = dirichlet::assemble_pencil({g, 1.0});
  const cplx shift(0.5, 8.0);

  ArnoldiConfig cfg;
  cfg.shift = shift;
  cfg.subspace = 70;
  cfg.wanted = 20;
  const ArnoldiResult ar = arnoldi_shift_invert(p, cfg);
  REQUIRE(ar.all_converged());
  for (double res : ar.ritz_residuals)
    CHECK(res <= cfg.tolerance * p.companion_norm());

  CompanionMatrix<double> comp(p);
  SpectrumResult dr = eigenvalues(comp.dense());
  std::sort(dr.eigenvalues.begin(), dr.eigenvalues.end(),
            [&](const cplx& a, const cplx& b) {
              return std::abs(a - shift) < std::abs(b - shift);
            });
  const std::vector<cplx> dense20(dr.eigenvalues.begin(),
                                  dr.eigenvalues.begin() + 20);
  CHECK(hausdorff_distance(ar.eigenvalues, dense20) < 1e-8);
}

TEST_CASE("two nearby shifts agree on shared eigenvalues") {
  const GridSpec g = make_grid(2, GridKind::dirichlet_box, 1.0, 8);
  const RealPencil p = dirichlet::assemble_pencil({g, 1.0});

  auto run = [&](cplx shift) {
    ArnoldiConfig cfg;
    cfg.shift = shift;
    cfg.subspace = 50;
    cfg.wanted = 8;
    return arnoldi_shift_invert(p, cfg);
  };
  const ArnoldiResult a = run(cplx(0.2, 6.0));
  const ArnoldiResult b = run(cplx(0.3, 6.2));
  REQUIRE(a.all_converged());
  REQUIRE(b.all_converged());
  int shared = 0;
  for (const cplx& za : a.eigenvalues) {
    double best = 1e300;
    for (const cplx& zb : b.eigenvalues) best = std::min(best, std::abs(za - zb));
    if (best < 1e-4) {
      CHECK(best < 1e-8);
      ++shared;
    }
  }
  CHECK(shared >= 4);
}
