#include <complex>
#include <sstream>

#include "doctest.h"
#include "qps/sparse.hpp"
#include "qps/spectrum_io.hpp"

using namespace qps;

TEST_CASE("triplets merge and sort into canonical form") {
  RealSparse a(3);
  a.add(2, 1, 4.0);
  a.add(0, 0, 1.0);
  a.add(2, 1, -1.0);
  a.add(1, 2, 0.5);
  a.finalize();
  REQUIRE(a.nnz() == 3);
  CHECK(a.entries()[0].row == 0);
  CHECK(a.coeff(2, 1) == 3.0);
  CHECK(a.coeff(1, 2) == 0.5);
  CHECK(a.coeff(0, 1) == 0.0);
}

TEST_CASE("exact zeros are dropped") {
  RealSparse a(2);
  a.add(0, 0, 1.0);
  a.add(0, 1, 2.0);
  a.add(0, 1, -2.0);
  a.finalize();
  CHECK(a.nnz() == 1);
}

TEST_CASE("apply matches an explicit small matrix") {
  RealSparse a(2);
  a.add(0, 0, 2.0);
  a.add(0, 1, -1.0);
  a.add(1, 0, 0.5);
  a.finalize();
  const std::vector<double> x{1.0, 3.0};
  std::vector<double> y(2);
  a.apply(std::span<const double>(x), std::span<double>(y));
  CHECK(y[0] == doctest::Approx(-1.0));
  CHECK(y[1] == doctest::Approx(0.5));

  // complex vectors through a real matrix
  const std::vector<cplx> xc{{1.0, 1.0}, {0.0, -2.0}};
  std::vector<cplx> yc(2);
  a.apply(std::span<const cplx>(xc), std::span<cplx>(yc));
  CHECK(yc[0] == cplx(2.0, 4.0));
  CHECK(yc[1] == cplx(0.5, 0.5));
}

TEST_CASE("adjoint apply conjugates and transposes") {
  ComplexSparse a(2);
  a.add(0, 1, cplx(0.0, 1.0));
  a.add(1, 0, cplx(2.0, 0.0));
  a.finalize();
  const std::vector<cplx> x{{1.0, 0.0}, {0.0, 1.0}};
  std::vector<cplx> y(2);
  a.apply_adjoint(std::span<const cplx>(x), std::span<cplx>(y));
  // A^H = [[0, 2], [-i, 0]]
  CHECK(y[0] == cplx(0.0, 2.0));
  CHECK(y[1] == cplx(0.0, -1.0));
}

TEST_CASE("out of range entries are rejected") {
  RealSparse a(2);
  CHECK_THROWS_AS(a.add(2, 0, 1.0), std::out_of_range);
  CHECK_THROWS_AS(a.add(0, -1, 1.0), std::out_of_range);
}

TEST_CASE("matrix market output, real symmetric lower triangle") {
  RealSparse a(2, SymmetryHint::symmetric);
  a.add(0, 0, 2.0);
  a.add(0, 1, -1.0);
  a.add(1, 0, -1.0);
  a.add(1, 1, 2.0);
  a.finalize();
  CHECK(a.hint_consistent());
  std::ostringstream os;
  write_matrix_market(os, a);
  const std::string text = os.str();
  CHECK(text.find("%%MatrixMarket matrix coordinate real symmetric") == 0);
  CHECK(text.find("2 2 3") != std::string::npos);
  CHECK(text.find("2 1 -1\n") != std::string::npos);
  CHECK(text.find("1 2 ") == std::string::npos);  // upper triangle omitted
}

TEST_CASE("matrix market output, complex general") {
  ComplexSparse a(2);
  a.add(0, 1, cplx(1.5, -2.0));
  a.finalize();
  std::ostringstream os;
  write_matrix_market(os, a);
  const std::string text = os.str();
  CHECK(text.find("coordinate complex general") != std::string::npos);
  CHECK(text.find("1 2 1.5 -2\n") != std::string::npos);
}
