#include "qps/util.hpp"

#include <limits>
#include <stdexcept>

namespace qps {

double directed_hausdorff(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty()) return 0.0;
  if (b.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const cplx& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& q : b) best = std::min(best, std::abs(p - q));
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff_distance(std::span<const cplx> a, std::span<const cplx> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::vector<cplx> seeded_unit_vector(std::int64_t n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("vector length must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = cplx(dist(rng), dist(rng));
  const double nrm = norm2(std::span<const cplx>(v));
  for (auto& z : v) z /= nrm;
  return v;
}

}  // namespace qps
