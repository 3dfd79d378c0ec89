#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qps/util.hpp"

namespace qps {

// Row-major dense matrix.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::int64_t n) : DenseMatrix(n, n) {}
  DenseMatrix(std::int64_t rows, std::int64_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T{}) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  }

  static DenseMatrix identity(std::int64_t n) {
    DenseMatrix m(n);
    for (std::int64_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }

  T& operator()(std::int64_t i, std::int64_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::int64_t i, std::int64_t j) const {
    return data_[i * cols_ + j];
  }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  std::span<T> row(std::int64_t i) {
    return {data_.data() + i * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<const T> row(std::int64_t i) const {
    return {data_.data() + i * cols_, static_cast<std::size_t>(cols_)};
  }

  template <class U>
  void apply(std::span<const U> x, std::span<U> y) const {
    if (static_cast<std::int64_t>(x.size()) != cols_ ||
        static_cast<std::int64_t>(y.size()) != rows_)
      throw std::invalid_argument("dense apply size mismatch");
    for (std::int64_t i = 0; i < rows_; ++i) {
      U acc{};
      const T* r = data_.data() + i * cols_;
      for (std::int64_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
      y[i] = acc;
    }
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const T& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const T& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  std::int64_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

template <class T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul size mismatch");
  DenseMatrix<T> c(a.rows(), b.cols());
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (std::int64_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline DenseMatrix<cplx> to_complex(const DenseMatrix<double>& a) {
  DenseMatrix<cplx> c(a.rows(), a.cols());
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  return c;
}

inline const DenseMatrix<cplx>& to_complex(const DenseMatrix<cplx>& a) {
  return a;
}

// Dense LU with partial pivoting; used for small solves (inverse iteration,
// determinant checks). Throws on dimension errors, reports exact breakdown.
template <class T>
class DenseLU {
 public:
  explicit DenseLU(DenseMatrix<T> a) : lu_(std::move(a)), piv_(lu_.rows()) {
    if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LU needs square");
    const std::int64_t n = lu_.rows();
    sign_ = 1;
    for (std::int64_t k = 0; k < n; ++k) {
      std::int64_t p = k;
      double best = std::abs(lu_(k, k));
      for (std::int64_t i = k + 1; i < n; ++i)
        if (std::abs(lu_(i, k)) > best) best = std::abs(lu_(i, k)), p = i;
      piv_[k] = p;
      if (p != k) {
        for (std::int64_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
        sign_ = -sign_;
      }
      if (lu_(k, k) == T{}) {
        singular_ = true;
        continue;
      }
      for (std::int64_t i = k + 1; i < n; ++i) {
        const T m = lu_(i, k) / lu_(k, k);
        lu_(i, k) = m;
        for (std::int64_t j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
      }
    }
  }

  bool singular() const { return singular_; }

  void solve_in_place(std::span<T> b) const {
    const std::int64_t n = lu_.rows();
    if (static_cast<std::int64_t>(b.size()) != n)
      throw std::invalid_argument("rhs size mismatch");
    if (singular_) throw std::runtime_error("singular dense LU");
    for (std::int64_t k = 0; k < n; ++k) {
      std::swap(b[k], b[piv_[k]]);
      for (std::int64_t i = k + 1; i < n; ++i) b[i] -= lu_(i, k) * b[k];
    }
    for (std::int64_t k = n - 1; k >= 0; --k) {
      b[k] /= lu_(k, k);
      for (std::int64_t i = 0; i < k; ++i) b[i] -= lu_(i, k) * b[k];
    }
  }

  T determinant() const {
    T det = static_cast<T>(sign_);
    for (std::int64_t k = 0; k < lu_.rows(); ++k) det *= lu_(k, k);
    return det;
  }

 private:
  DenseMatrix<T> lu_;
  std::vector<std::int64_t> piv_;
  int sign_ = 1;
  bool singular_ = false;
};

}  // namespace qps
