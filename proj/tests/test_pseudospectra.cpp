#include <cmath>

#include "doctest.h"
#include "qps/dirichlet.hpp"
#include "qps/eig_dense.hpp"
#include "qps/pencil.hpp"
#include "qps/pseudospectra.hpp"

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

TEST_CASE("smin of the 2x2 companion matches the closed form") {
  const RealPencil p = scalar_pencil(2.0, 3.0);
  // singular values of [[0,1],[-2,-3]]: sqrt of eigenvalues of A^T A,
  // lambda = 7 +- 3 sqrt(5)
  const double want = std::sqrt(7.0 - 3.0 * std::sqrt(5.0));
  const SminResult r = smin_at(p, cplx{});
  CHECK(r.status == SminStatus::converged);
  CHECK(r.value == doctest::Approx(want).epsilon(1e-7));
  CHECK(smin_dense(p, cplx{}) == doctest::Approx(want).epsilon(1e-7));
}

TEST_CASE("smin vanishes at a computed eigenvalue") {
  const GridSpec g = make_grid(2, GridKind::dirichlet_box, 1.0, 4);
  const RealPencil p = dirichlet::assemble_pencil({g, 1.0});
  CompanionMatrix<double> comp(p);
  const auto spec = eigenvalues(comp.dense());
  const cplx z = spec.eigenvalues[3];
  const SminResult r = smin_at(p, z);
  CHECK(r.value <= 1e-10 * p.companion_norm());
}

TEST_CASE("smin is bounded by the distance to the spectrum") {
  const GridSpec g = make_grid(2, GridKind::dirichlet_box, 1.0, 8);
  const RealPencil p = dirichlet::assemble_pencil({g, 1.0});
  CompanionMatrix<double> comp(p);
  const auto spec = eigenvalues(comp.dense());

  double re_lo = 1e300, re_hi = -1e300, im_lo = 1e300, im_hi = -1e300;
  for (const cplx& z : spec.eigenvalues) {
    re_lo = std::min(re_lo, z.real());
    re_hi = std::max(re_hi, z.real());
    im_lo = std::min(im_lo, z.imag());
    im_hi = std::max(im_hi, z.imag());
  }
  ZGridSpec zg{re_lo, re_hi, im_lo, im_hi, 6, 6};
  const PseudospectrumField field = scan(p, zg);
  for (int iy = 0; iy < zg.ny; ++iy)
    for (int ix = 0; ix < zg.nx; ++ix) {
      const cplx z = zg.point(ix, iy);
      double dist = 1e300;
      for (const cplx& ev : spec.eigenvalues)
        dist = std::min(dist, std::abs(z - ev));
      CHECK(field.value_at(ix, iy) <= dist + 1e-8);
      CHECK(field.value_at(ix, iy) >= 0.0);
      CHECK(std::isfinite(field.value_at(ix, iy)));
    }
}

TEST_CASE("smin agrees with the dense SVD cross-check away from the spectrum") {
  const GridSpec g = make_grid(1, GridKind::dirichlet_box, 1.0, 6);
  const RealPencil p = dirichlet::assemble_pencil({g, 1.0});
  for (const cplx z : {cplx(0.5, 0.5), cplx(-1.0, 2.0), cplx(0.0, -3.0)}) {
    const SminResult it = smin_at(p, z);
    const double dd = smin_dense(p, z);
    // the successive-estimate stopping rule stagnates when the two smallest
    // singular values cluster, so the iterate is only a ~1e-4 overestimate
    CHECK(it.value == doctest::Approx(dd).epsilon(1e-3));
    CHECK(it.value >= dd * (1.0 - 1e-6));
  }
}

TEST_CASE("scan matches pointwise evaluation and is symmetric for real pencils") {
  const RealPencil p = scalar_pencil(2.0, 3.0);
  ZGridSpec zg{-1.0, 1.0, -2.0, 2.0, 3, 5};
  const PseudospectrumField field = scan(p, zg);
  for (int iy = 0; iy < zg.ny; ++iy)
    for (int ix = 0; ix < zg.nx; ++ix) {
      const SminResult r = smin_at(p, zg.point(ix, iy));
      CHECK(field.value_at(ix, iy) == r.value);  // identical computation
    }
  // real companion: s_min(A - conj(z) I) = s_min(A - z I)
  for (int iy = 0; iy < zg.ny; ++iy)
    for (int ix = 0; ix < zg.nx; ++ix)
      CHECK(field.value_at(ix, iy) ==
            doctest::Approx(field.value_at(ix, zg.ny - 1 - iy)).epsilon(1e-10));
}

TEST_CASE("grid refinement reproduces coarse nodes exactly") {
  const RealPencil p = scalar_pencil(1.0, 1.0);
  ZGridSpec coarse{-1.0, 1.0, -1.0, 1.0, 3, 3};
  ZGridSpec fine{-1.0, 1.0, -1.0, 1.0, 5, 5};  // nests the coarse grid
  const PseudospectrumField fc = scan(p, coarse);
  const PseudospectrumField ff = scan(p, fine);
  for (int iy = 0; iy < 3; ++iy)
    for (int ix = 0; ix < 3; ++ix)
      CHECK(fc.value_at(ix, iy) == ff.value_at(2 * ix, 2 * iy));
}

TEST_CASE("worker count does not change the field") {
  const GridSpec g = make_grid(1, GridKind::dirichlet_box, 1.0, 5);
  const RealPencil p = dirichlet::assemble_pencil({g, 1.0});
  ZGridSpec zg{-0.5, 0.5, 0.5, 2.5, 4, 4};
  const PseudospectrumField one = scan(p, zg, 0x5eed, 1);
  const PseudospectrumField two = scan(p, zg, 0x5eed, 2);
  for (std::size_t i = 0; i < one.values.size(); ++i)
    CHECK(one.values[i] == two.values[i]);
}

TEST_CASE("singular shift returns exact zero, flagged") {
  const RealPencil p = scalar_pencil(2.0, 3.0);
  const SminResult r = smin_at(p, cplx(-1.0, 0.0));
  CHECK(r.value == 0.0);
  CHECK(r.status == SminStatus::singular);
}

TEST_CASE("z-grid validation") {
  ZGridSpec bad{1.0, -1.0, 0.0, 1.0, 3, 3};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  ZGridSpec bad2{-1.0, 1.0, 0.0, 1.0, 1, 3};
  CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}
