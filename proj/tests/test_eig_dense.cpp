#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qps/eig_dense.hpp"
#include "qps/oracles.hpp"

using namespace qps;

namespace {

std::mt19937_64 rng(42);

DenseMatrix<double> random_matrix(std::int64_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  DenseMatrix<double> a(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) a(i, j) = d(rng);
  return a;
}

DenseMatrix<cplx> random_cmatrix(std::int64_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  DenseMatrix<cplx> a(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j) a(i, j) = cplx(d(rng), d(rng));
  return a;
}

// max over one set of the distance to the nearest point of the other
double match_distance(std::vector<cplx> got, std::vector<cplx> want) {
  return hausdorff_distance(got, want);
}

template <class T>
double similarity_residual(const DenseMatrix<T>& a, const HessenbergResult<T>& hs) {
  // || a - q h q^H ||_F
  DenseMatrix<T> qh = matmul(hs.q, hs.h);
  DenseMatrix<T> qhq(a.rows());
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.rows(); ++j) {
      T acc{};
      for (std::int64_t k = 0; k < a.rows(); ++k) {
        if constexpr (std::is_same_v<T, cplx>)
          acc += qh(i, k) * std::conj(hs.q(j, k));
        else
          acc += qh(i, k) * hs.q(j, k);
      }
      qhq(i, j) = acc;
    }
  double s = 0.0;
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.rows(); ++j) s += std::norm(a(i, j) - qhq(i, j));
  return std::sqrt(s);
}

template <class T>
double orthogonality_residual(const DenseMatrix<T>& q) {
  double worst = 0.0;
  for (std::int64_t i = 0; i < q.rows(); ++i)
    for (std::int64_t j = 0; j < q.rows(); ++j) {
      T acc{};
      for (std::int64_t k = 0; k < q.rows(); ++k) {
        if constexpr (std::is_same_v<T, cplx>)
          acc += std::conj(q(k, i)) * q(k, j);
        else
          acc += q(k, i) * q(k, j);
      }
      const T want = i == j ? T{1} : T{};
      worst = std::max(worst, std::abs(acc - want));
    }
  return worst;
}

}  // namespace

TEST_CASE("balance leaves a balanced matrix alone") {
  DenseMatrix<double> a(3);
  a(0, 1) = 1.0;
  a(1, 0) = -1.0;
  a(1, 2) = 0.5;
  a(2, 1) = 0.5;
  DenseMatrix<double> before = a;
  const auto scale = balance(a);
  for (double s : scale) CHECK(s == 1.0);
  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 3; ++j) CHECK(a(i, j) == before(i, j));
}

TEST_CASE("balance undoes a known power-of-two similarity") {
  DenseMatrix<double> base = random_matrix(5);
  // pre-balance so the reference point is a fixed point of the algorithm
  balance(base);
  const double dvals[5] = {1024.0, 1.0, 1.0, 0.0625, 1.0};
  DenseMatrix<double> skewed(5);
  for (std::int64_t i = 0; i < 5; ++i)
    for (std::int64_t j = 0; j < 5; ++j)
      skewed(i, j) = base(i, j) * dvals[j] / dvals[i];
  const auto scale = balance(skewed);
  // skewed = D^-1 base D, so the recovered scalings satisfy scale ~ c / dvals
  const double r0 = scale[0] * dvals[0];
  for (std::int64_t i = 0; i < 5; ++i) {
    const double ratio = scale[i] * dvals[i] / r0;
    CHECK(ratio <= 2.0 + 1e-12);
    CHECK(ratio >= 0.5 - 1e-12);
  }
}

TEST_CASE("balance is an exact similarity: eigenvalues preserved") {
  DenseMatrix<double> a = random_matrix(20);
  DenseMatrix<double> b = a;
  balance(b);
  auto ea = qr_eigenvalues(hessenberg(a, false).h);
  auto eb = qr_eigenvalues(hessenberg(b, false).h);
  CHECK(match_distance(ea.eigenvalues, eb.eigenvalues) < 1e-12 * a.max_abs() * 20);
}

TEST_CASE("hessenberg reduction: structure and similarity") {
  DenseMatrix<double> a = random_matrix(30);
  const auto hs = hessenberg(a);
  for (std::int64_t i = 0; i < 30; ++i)
    for (std::int64_t j = 0; j + 1 < i; ++j) CHECK(hs.h(i, j) == 0.0);
  CHECK(orthogonality_residual(hs.q) < 1e-13);
  CHECK(similarity_residual(a, hs) < 1e-12 * a.frobenius_norm());

  DenseMatrix<cplx> c = random_cmatrix(20);
  const auto hc = hessenberg(c);
  for (std::int64_t i = 0; i < 20; ++i)
    for (std::int64_t j = 0; j + 1 < i; ++j) CHECK(hc.h(i, j) == cplx{});
  CHECK(orthogonality_residual(hc.q) < 1e-13);
  CHECK(similarity_residual(c, hc) < 1e-12 * c.frobenius_norm());
}

TEST_CASE("hessenberg of an already-Hessenberg matrix is the identity transform") {
  DenseMatrix<double> a = random_matrix(8);
  for (std::int64_t i = 0; i < 8; ++i)
    for (std::int64_t j = 0; j + 1 < i; ++j) a(i, j) = 0.0;
  const auto hs = hessenberg(a);
  for (std::int64_t i = 0; i < 8; ++i) {
    for (std::int64_t j = 0; j < 8; ++j) {
      CHECK(hs.h(i, j) == a(i, j));
      CHECK(hs.q(i, j) == (i == j ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("qr on an upper triangular matrix returns the diagonal, zero sweeps") {
  DenseMatrix<double> a(4);
  a(0, 0) = 3.0;
  a(1, 1) = -1.0;
  a(2, 2) = 0.5;
  a(3, 3) = 7.0;
  a(0, 2) = 5.0;
  a(1, 3) = -2.0;
  const auto r = qr_eigenvalues(a);
  CHECK(r.total_iterations == 0);
  std::vector<double> got;
  for (const cplx& z : r.eigenvalues) {
    CHECK(z.imag() == 0.0);
    got.push_back(z.real());
  }
  std::sort(got.begin(), got.end());
  CHECK(got[0] == -1.0);
  CHECK(got[1] == 0.5);
  CHECK(got[2] == 3.0);
  CHECK(got[3] == 7.0);
}

TEST_CASE("qr finds the rotation matrix pair +-i") {
  DenseMatrix<double> a(2);
  a(0, 1) = -1.0;
  a(1, 0) = 1.0;
  const auto r = qr_eigenvalues(a);
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(r.eigenvalues[0].real() == doctest::Approx(0.0));
  CHECK(r.eigenvalues[0].imag() == doctest::Approx(-1.0));
  CHECK(r.eigenvalues[1].imag() == doctest::Approx(1.0));
  CHECK(r.all_converged());
}

TEST_CASE("construct-and-recover: real spectrum through a random similarity") {
  const int n = 20;
  std::vector<cplx> want;
  DenseMatrix<double> d(n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = -3.0 + 0.35 * i;
    want.emplace_back(d(i, i), 0.0);
  }
  // well-conditioned transform: identity plus a small random perturbation
  DenseMatrix<double> x = DenseMatrix<double>::identity(n);
  DenseMatrix<double> pert = random_matrix(n, 0.05);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) += pert(i, j);
  // a = x d inv(x)  =>  a x = x d  =>  x^T a^T = (x d)^T, solved column-wise
  DenseMatrix<double> xd = matmul(x, d);
  DenseMatrix<double> xt(n), rhs(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      xt(i, j) = x(j, i);
      rhs(i, j) = xd(j, i);
    }
  DenseLU<double> lut(std::move(xt));
  DenseMatrix<double> a(n);
  for (int col = 0; col < n; ++col) {
    std::vector<double> b(n);
    for (int i = 0; i < n; ++i) b[i] = rhs(i, col);
    lut.solve_in_place(std::span<double>(b));
    for (int i = 0; i < n; ++i) a(col, i) = b[i];  // transpose back
  }
  const auto r = eigenvalues(std::move(a));
  CHECK(r.all_converged());
  CHECK(match_distance(r.eigenvalues, want) < 1e-9 * 3.65);
}

TEST_CASE("construct-and-recover: complex spectrum") {
  const int n = 16;
  std::vector<cplx> want;
  DenseMatrix<cplx> d(n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = cplx(std::cos(1.0 + i), 0.3 * i - 2.0);
    want.push_back(d(i, i));
  }
  DenseMatrix<cplx> x = DenseMatrix<cplx>::identity(n);
  DenseMatrix<cplx> pert = random_cmatrix(n, 0.05);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) += pert(i, j);
  DenseMatrix<cplx> xd = matmul(x, d);
  DenseMatrix<cplx> xt(n), rhs(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      xt(i, j) = x(j, i);
      rhs(i, j) = xd(j, i);
    }
  DenseLU<cplx> lut(std::move(xt));
  DenseMatrix<cplx> a(n);
  for (int col = 0; col < n; ++col) {
    std::vector<cplx> b(n);
    for (int i = 0; i < n; ++i) b[i] = rhs(i, col);
    lut.solve_in_place(std::span<cplx>(b));
    for (int i = 0; i < n; ++i) a(col, i) = b[i];
  }
  const auto r = eigenvalues(std::move(a));
  CHECK(r.all_converged());
  CHECK(match_distance(r.eigenvalues, want) < 1e-9 * 10);
}

TEST_CASE("trace and determinant are conserved") {
  for (int n : {5, 8}) {
    DenseMatrix<double> a = random_matrix(n);
    double tr = 0.0;
    double amax = a.max_abs();
    for (int i = 0; i < n; ++i) tr += a(i, i);
    const double det = DenseLU<double>(DenseMatrix<double>(a)).determinant();
    const auto r = eigenvalues(std::move(a));
    cplx sum{}, prod{1.0, 0.0};
    for (const cplx& z : r.eigenvalues) {
      sum += z;
      prod *= z;
    }
    CHECK(std::abs(sum - tr) < 1e-10 * n * amax);
    CHECK(std::abs(prod - det) < 1e-8 * std::abs(det) + 1e-12);
  }
}

TEST_CASE("real inputs give exactly paired conjugate eigenvalues") {
  DenseMatrix<double> a = random_matrix(25);
  const auto r = eigenvalues(std::move(a));
  for (const cplx& z : r.eigenvalues) {
    if (z.imag() == 0.0) continue;
    bool found = false;
    for (const cplx& w : r.eigenvalues)
      if (w == std::conj(z)) {
        found = true;
        break;
      }
    CHECK(found);
  }
}

TEST_CASE("complex qr matches the real path on a promoted real matrix") {
  DenseMatrix<double> a = random_matrix(15);
  const auto real_path = eigenvalues(DenseMatrix<double>(a));
  const auto complex_path = eigenvalues(to_complex(a));
  CHECK(match_distance(real_path.eigenvalues, complex_path.eigenvalues) <
        1e-10);
}

TEST_CASE("eigenvector recovery") {
  {
    DenseMatrix<double> a(3);
    a(0, 0) = 1.0;
    a(1, 1) = 4.0;
    a(2, 2) = -2.0;
    const auto r = eigenvector(a, cplx(4.0, 0.0));
    CHECK(std::abs(r.vector[1]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(r.vector[0]) < 1e-8);
    CHECK(std::abs(r.vector[2]) < 1e-8);
    CHECK(r.residual < 1e-8);
  }
  {
    // defective Jordan block still has one true eigenvector
    DenseMatrix<double> a(2);
    a(0, 1) = 1.0;
    const auto r = eigenvector(a, cplx(0.0, 0.0));
    CHECK(r.residual < 1e-7);
    CHECK(std::abs(r.vector[0]) == doctest::Approx(1.0).epsilon(1e-6));
  }
  {
    // companion of lambda^2 + 3 lambda + 2 at lambda = -1: (1, -1)/sqrt(2)
    DenseMatrix<double> a(2);
    a(0, 1) = 1.0;
    a(1, 0) = -2.0;
    a(1, 1) = -3.0;
    const auto r = eigenvector(a, cplx(-1.0, 0.0));
    const cplx ratio = r.vector[1] / r.vector[0];
    CHECK(ratio.real() == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(std::abs(ratio.imag()) < 1e-8);
  }
}

TEST_CASE("symmetric QL agrees with the analytic tridiagonal spectrum") {
  // assembled second-difference matrix has eigenvalues 4 sin^2(p pi / (2(N+1)))
  const int n = 17;
  DenseMatrix<double> a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0;
    if (i > 0) a(i, i - 1) = -1.0;
    if (i + 1 < n) a(i, i + 1) = -1.0;
  }
  const auto got = symmetric_eigenvalues(std::move(a));
  const auto want = oracles::dirichlet_laplacian_eigs(1, n, 1.0);
  for (int i = 0; i < n; ++i)
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("symmetric QL agrees with the nonsymmetric path on a dense matrix") {
  const int n = 22;
  DenseMatrix<double> a = random_matrix(n);
  DenseMatrix<double> sym(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sym(i, j) = 0.5 * (a(i, j) + a(j, i));
  const auto viaql = symmetric_eigenvalues(DenseMatrix<double>(sym));
  const auto viaqr = eigenvalues(std::move(sym));
  std::vector<double> got;
  for (const cplx& z : viaqr.eigenvalues) {
    CHECK(std::abs(z.imag()) < 1e-10);
    got.push_back(z.real());
  }
  std::sort(got.begin(), got.end());
  for (int i = 0; i < n; ++i)
    CHECK(got[i] == doctest::Approx(viaql[i]).epsilon(1e-9));
}
