#pragma once

// Existence certificates for zeros of a residual map on a closed ball.
//
// With c a gradient-domination constant on B_r(x), i.e.
//     |grad phi(v)| >= c |F(v)|   for all v in B_r(x),
// the condition |F(x)| <= r c guarantees a zero of F inside B_r(x)
// (assuming grad phi is locally Lipschitz). Large c helps the second
// inequality and hurts the first; `slack = r c - |F(x)|` measures how
// comfortably the pair holds.

#include <cstdint>
#include <string_view>

#include "zerocert/problems.hpp"

namespace zerocert {

struct Ball {
  Vector center;
  double radius = 1.0;

  Ball() = default;
  Ball(Vector c, double r);
  Ball(double c, double r);

  bool contains(const Vector& v, double tolerance = 0.0) const;
};

enum class CertificateMethod { closed_form_quadratic, sampled };

std::string_view to_string(CertificateMethod method);
CertificateMethod certificate_method_from_string(std::string_view name);

struct Certificate {
  Ball ball;
  double c = 0.0;
  double lhs = 0.0;  // |F(x)|
  double rhs = 0.0;  // r c
  double slack = 0.0;
  bool passed = false;
  CertificateMethod method = CertificateMethod::sampled;
  std::int64_t sample_count = 0;

  // Sampled constants are estimates, not proven lower bounds.
  bool advisory() const { return method == CertificateMethod::sampled; }
};

// Fills rhs, slack and the verdict from (c, lhs). Ties count as passed.
Certificate make_certificate(Ball ball, double c, double lhs, CertificateMethod method,
                             std::int64_t sample_count);

// Largest c for F(u) = lambda u^2 - 1 on [x - r, x + r]:
//   2|lambda| * { 0 if the interval contains 0; x - r if x - r >= 0; -x - r if x + r <= 0 }.
double quadratic_domination_constant(double lambda, double x, double r);

struct SamplingConfig {
  int samples_per_axis = 1001;
  double residual_floor = 1e-12;
  double safety = 0.9;
  std::uint64_t seed = 42;
  std::int64_t max_points = 1'000'000;

  void validate() const;
};

struct SampledConstant {
  double c = 0.0;
  // Points evaluated (including those excluded by the residual floor).
  std::int64_t sample_count = 0;
  // Points whose residual exceeded the floor and entered the minimum.
  std::int64_t ratio_count = 0;
};

// safety * min over sampled v in the ball of |grad phi(v)| / |F(v)|, skipping
// points with |F(v)| <= residual_floor. Dimension 1 uses a uniform grid with
// both endpoints; higher dimensions use min(samples_per_axis^n, max_points)
// quasi-random points plus the center. Returns 0 if no point qualifies.
SampledConstant estimate_domination_constant(const ResidualProblem& problem, const Ball& ball,
                                             const SamplingConfig& config);

double domination_constant_sampled(const ResidualProblem& problem, const Ball& ball,
                                   int samples_per_axis, double residual_floor, double safety);

struct CertifyConfig {
  CertificateMethod method = CertificateMethod::sampled;
  SamplingConfig sampling;
};

// Throws InvalidMethodError when the closed form is requested for a problem
// that is not the built-in quadratic.
Certificate certify(const ResidualProblem& problem, const Ball& ball, const CertifyConfig& config);

}  // namespace zerocert
