#include "qps/banded_lu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qps {

BandedLU::BandedLU(std::int64_t n, std::int64_t kl, std::int64_t ku)
    : n_(n), kl_(kl), ku_(ku), rows_(2 * kl + ku + 1), ab_(rows_ * n, cplx{}),
      piv_(n, 0) {
  if (n <= 0) throw std::invalid_argument("banded order must be positive");
  if (kl < 0 || ku < 0 || kl >= n || ku >= n)
    throw std::invalid_argument("invalid bandwidths");
}

void BandedLU::add(std::int64_t i, std::int64_t j, cplx v) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw std::out_of_range("banded index out of range");
  if (i - j > kl_ || j - i > ku_)
    throw std::out_of_range("entry outside declared band");
  at(kl_ + ku_ + i - j, j) += v;
}

bool BandedLU::factor(double rel_tol) {
  if (factored_) throw std::logic_error("already factored");
  // After pivoting the upper bandwidth grows to kl+ku.
  const std::int64_t kv = kl_ + ku_;

  double max_mag = 0.0;
  for (const cplx& v : ab_) max_mag = std::max(max_mag, std::abs(v));
  const double tiny = rel_tol * max_mag;

  for (std::int64_t j = 0; j < n_; ++j) {
    const std::int64_t km = std::min(kl_, n_ - 1 - j);  // rows below diagonal
    // Partial pivot among rows j..j+km of column j.
    std::int64_t p = 0;
    double best = std::abs(at(kl_ + ku_, j));
    for (std::int64_t i = 1; i <= km; ++i) {
      const double m = std::abs(at(kl_ + ku_ + i, j));
      if (m > best) best = m, p = i;
    }
    piv_[j] = j + p;
    if (best <= tiny) {
      singular_ = true;
      return false;
    }
    const std::int64_t jmax = std::min(n_ - 1, j + kv);
    if (p != 0) {
      for (std::int64_t jj = j; jj <= jmax; ++jj)
        std::swap(at(kl_ + ku_ + j + p - jj, jj), at(kl_ + ku_ + j - jj, jj));
    }
    const cplx pivot = at(kl_ + ku_, j);
    for (std::int64_t i = 1; i <= km; ++i) {
      const cplx m = at(kl_ + ku_ + i, j) / pivot;
      at(kl_ + ku_ + i, j) = m;
      for (std::int64_t jj = j + 1; jj <= jmax; ++jj)
        at(kl_ + ku_ + j + i - jj, jj) -= m * at(kl_ + ku_ + j - jj, jj);
    }
  }
  factored_ = true;
  return true;
}

void BandedLU::solve(std::span<cplx> b) const {
  if (!factored_ || singular_) throw std::logic_error("no usable factorization");
  if (static_cast<std::int64_t>(b.size()) != n_)
    throw std::invalid_argument("rhs size mismatch");
  const std::int64_t kv = kl_ + ku_;
  // L y = P b (interchanges interleaved, as recorded during elimination).
  for (std::int64_t j = 0; j < n_; ++j) {
    std::swap(b[j], b[piv_[j]]);
    const std::int64_t km = std::min(kl_, n_ - 1 - j);
    for (std::int64_t i = 1; i <= km; ++i)
      b[j + i] -= at(kl_ + ku_ + i, j) * b[j];
  }
  // U x = y
  for (std::int64_t j = n_ - 1; j >= 0; --j) {
    b[j] /= at(kl_ + ku_, j);
    const std::int64_t imin = std::max<std::int64_t>(0, j - kv);
    for (std::int64_t i = imin; i < j; ++i)
      b[i] -= at(kl_ + ku_ + i - j, j) * b[j];
  }
}

void BandedLU::solve_adjoint(std::span<cplx> b) const {
  if (!factored_ || singular_) throw std::logic_error("no usable factorization");
  if (static_cast<std::int64_t>(b.size()) != n_)
    throw std::invalid_argument("rhs size mismatch");
  const std::int64_t kv = kl_ + ku_;
  // U^H w = b (U^H is lower triangular).
  for (std::int64_t j = 0; j < n_; ++j) {
    const std::int64_t imin = std::max<std::int64_t>(0, j - kv);
    cplx acc = b[j];
    for (std::int64_t i = imin; i < j; ++i)
      acc -= std::conj(at(kl_ + ku_ + i - j, j)) * b[i];
    b[j] = acc / std::conj(at(kl_ + ku_, j));
  }
  // L^H x = w with the interchanges unwound in reverse.
  for (std::int64_t j = n_ - 1; j >= 0; --j) {
    const std::int64_t km = std::min(kl_, n_ - 1 - j);
    cplx acc = b[j];
    for (std::int64_t i = 1; i <= km; ++i)
      acc -= std::conj(at(kl_ + ku_ + i, j)) * b[j + i];
    b[j] = acc;
    std::swap(b[j], b[piv_[j]]);
  }
}

}  // namespace qps
