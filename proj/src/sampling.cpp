#include "zerocert/sampling.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace zerocert {

std::vector<double> interval_grid(double center, double radius, int count) {
  if (count < 2) throw std::invalid_argument("interval grid needs at least 2 points");
  const double lo = center - radius;
  const double hi = center + radius;
  std::vector<double> points(static_cast<std::size_t>(count));
  const int last = count - 1;
  for (int k = 0; k <= last; ++k) {
    points[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / last;
  }
  points.back() = hi;
  return points;
}

double radical_inverse(std::uint64_t index, std::uint32_t base) {
  const double inv_base = 1.0 / base;
  double scale = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv_base;
  }
  return result;
}

std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> primes;
  primes.reserve(count);
  for (std::uint32_t candidate = 2; primes.size() < count; ++candidate) {
    const bool composite = std::any_of(primes.begin(), primes.end(), [candidate](std::uint32_t p) {
      return p * p <= candidate && candidate % p == 0;
    });
    if (!composite) primes.push_back(candidate);
  }
  return primes;
}

BallSequence::BallSequence(Vector center, double radius, std::uint64_t seed)
    : center_(std::move(center)), radius_(radius) {
  const auto dims = static_cast<std::size_t>(center_.size()) + 1;
  bases_ = first_primes(dims);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  shifts_.resize(dims);
  for (auto& s : shifts_) s = unit(rng);
}

void BallSequence::point(std::uint64_t index, Vector& out) const {
  const Eigen::Index n = center_.size();
  out.resize(n);
  // Index 0 of the Halton sequence is the origin; skip it.
  const std::uint64_t k = index + 1;
  auto coordinate = [&](std::size_t d) {
    double u = radical_inverse(k, bases_[d]) + shifts_[d];
    if (u >= 1.0) u -= 1.0;
    return std::clamp(u, 1e-15, 1.0 - 1e-15);
  };
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * coordinate(static_cast<std::size_t>(i)) - 1.0);
    out[i] = z;
    norm2 += z * z;
  }
  const double radial = radius_ * std::pow(coordinate(static_cast<std::size_t>(n)), 1.0 / static_cast<double>(n));
  const double norm = std::sqrt(norm2);
  if (norm == 0.0) {
    out = center_;
    return;
  }
  out = center_ + (radial / norm) * out;
}

}  // namespace zerocert
