#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qps/util.hpp"

namespace qps {

enum class SymmetryHint { general, symmetric, hermitian };

// Square sparse matrix assembled from (row, col, value) triplets. finalize()
// brings the entry list to canonical form (sorted row-major, duplicates
// summed, exact zeros dropped) and builds a CSR view for products.
template <class T>
class SparseMatrix {
 public:
  struct Entry {
    std::int64_t row = 0;
    std::int64_t col = 0;
    T value{};
  };

  SparseMatrix() = default;
  explicit SparseMatrix(std::int64_t order,
                        SymmetryHint hint = SymmetryHint::general)
      : order_(order), hint_(hint) {
    if (order < 0) throw std::invalid_argument("sparse matrix order < 0");
  }

  std::int64_t order() const { return order_; }
  SymmetryHint hint() const { return hint_; }
  void set_hint(SymmetryHint h) { hint_ = h; }

  void add(std::int64_t row, std::int64_t col, T value) {
    if (row < 0 || row >= order_ || col < 0 || col >= order_)
      throw std::out_of_range("sparse entry index out of range");
    entries_.push_back({row, col, value});
    finalized_ = false;
  }

  void finalize() {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) {
                return a.row != b.row ? a.row < b.row : a.col < b.col;
              });
    std::vector<Entry> merged;
    merged.reserve(entries_.size());
    for (const Entry& e : entries_) {
      if (!merged.empty() && merged.back().row == e.row &&
          merged.back().col == e.col) {
        merged.back().value += e.value;
      } else {
        merged.push_back(e);
      }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Entry& e) { return e.value == T{}; }),
                 merged.end());
    entries_ = std::move(merged);
    build_csr();
    finalized_ = true;
  }

  bool finalized() const { return finalized_; }

  const std::vector<Entry>& entries() const {
    require_finalized();
    return entries_;
  }

  std::int64_t nnz() const {
    require_finalized();
    return static_cast<std::int64_t>(entries_.size());
  }

  // Value at (row, col); zero if the position holds no entry.
  T coeff(std::int64_t row, std::int64_t col) const {
    require_finalized();
    const auto lo = row_start_[row], hi = row_start_[row + 1];
    for (auto k = lo; k < hi; ++k)
      if (entries_[k].col == col) return entries_[k].value;
    return T{};
  }

  // y = A x
  template <class U>
  void apply(std::span<const U> x, std::span<U> y) const {
    require_finalized();
    check_size(x.size());
    check_size(y.size());
    std::fill(y.begin(), y.end(), U{});
    for (std::int64_t r = 0; r < order_; ++r) {
      U acc{};
      for (auto k = row_start_[r]; k < row_start_[r + 1]; ++k)
        acc += entries_[k].value * x[entries_[k].col];
      y[r] = acc;
    }
  }

  // y = A^H x (conjugate transpose; plain transpose for real T)
  template <class U>
  void apply_adjoint(std::span<const U> x, std::span<U> y) const {
    require_finalized();
    check_size(x.size());
    check_size(y.size());
    std::fill(y.begin(), y.end(), U{});
    for (std::int64_t r = 0; r < order_; ++r) {
      for (auto k = row_start_[r]; k < row_start_[r + 1]; ++k) {
        const Entry& e = entries_[k];
        y[e.col] += conj_value(e.value) * x[r];
      }
    }
  }

  double frobenius_norm() const {
    require_finalized();
    double s = 0.0;
    for (const Entry& e : entries_) s += std::norm(e.value);
    return std::sqrt(s);
  }

  double max_abs() const {
    require_finalized();
    double m = 0.0;
    for (const Entry& e : entries_) m = std::max(m, std::abs(e.value));
    return m;
  }

  SparseMatrix<T> scaled(T factor) const {
    require_finalized();
    SparseMatrix<T> out(order_, hint_);
    for (const Entry& e : entries_) out.add(e.row, e.col, factor * e.value);
    out.finalize();
    return out;
  }

  // Checks the structural symmetry promise of the hint; used by tests.
  bool hint_consistent() const {
    require_finalized();
    if (hint_ == SymmetryHint::general) return true;
    for (const Entry& e : entries_) {
      const T mirror = coeff(e.col, e.row);
      const T want =
          hint_ == SymmetryHint::symmetric ? e.value : conj_value(e.value);
      if (mirror != want) return false;
    }
    return true;
  }

 private:
  static T conj_value(const T& v) {
    if constexpr (std::is_same_v<T, cplx>)
      return std::conj(v);
    else
      return v;
  }

  void require_finalized() const {
    if (!finalized_)
      throw std::logic_error("sparse matrix used before finalize()");
  }

  void check_size(std::size_t n) const {
    if (static_cast<std::int64_t>(n) != order_)
      throw std::invalid_argument("vector size does not match matrix order");
  }

  void build_csr() {
    row_start_.assign(order_ + 1, 0);
    for (const Entry& e : entries_) ++row_start_[e.row + 1];
    for (std::int64_t r = 0; r < order_; ++r) row_start_[r + 1] += row_start_[r];
  }

  std::int64_t order_ = 0;
  SymmetryHint hint_ = SymmetryHint::general;
  std::vector<Entry> entries_;
  std::vector<std::int64_t> row_start_;
  bool finalized_ = false;
};

using RealSparse = SparseMatrix<double>;
using ComplexSparse = SparseMatrix<cplx>;

}  // namespace qps
