#pragma once

// Deterministic point sets covering a closed ball.

#include <cstdint>
#include <vector>

#include "zerocert/problems.hpp"

namespace zerocert {

// Uniform grid of `count` points on [center - radius, center + radius],
// both endpoints included. count >= 2.
std::vector<double> interval_grid(double center, double radius, int count);

// Quasi-random points uniformly distributed in the n-ball B_radius(center).
// Built from a Halton sequence in n + 1 dimensions with a Cranley-Patterson
// shift drawn from `seed`: n coordinates give a Gaussian direction, the last
// gives the radius via u^(1/n). Point k is a pure function of (k, seed), so
// any subset of indices can be generated independently.
class BallSequence {
 public:
  BallSequence(Vector center, double radius, std::uint64_t seed);

  Eigen::Index dimension() const { return center_.size(); }

  // Writes point `index` into `out` (resized to the dimension).
  void point(std::uint64_t index, Vector& out) const;

 private:
  Vector center_;
  double radius_;
  std::vector<std::uint32_t> bases_;
  std::vector<double> shifts_;
};

// Halton radical inverse of `index` in `base`, in [0, 1).
double radical_inverse(std::uint64_t index, std::uint32_t base);

// First `count` primes.
std::vector<std::uint32_t> first_primes(std::size_t count);

}  // namespace zerocert
