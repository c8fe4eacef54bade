#include "zerocert/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "zerocert/errors.hpp"
#include "zerocert/functional.hpp"
#include "zerocert/sampling.hpp"

namespace zerocert {

Ball::Ball(Vector c, double r) : center(std::move(c)), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("ball radius must be positive");
}

Ball::Ball(double c, double r) : Ball(Vector::Constant(1, c), r) {}

bool Ball::contains(const Vector& v, double tolerance) const {
  return (v - center).norm() <= radius + tolerance;
}

std::string_view to_string(CertificateMethod method) {
  switch (method) {
    case CertificateMethod::closed_form_quadratic:
      return "closed_form_quadratic";
    case CertificateMethod::sampled:
      return "sampled";
  }
  return "unknown";
}

CertificateMethod certificate_method_from_string(std::string_view name) {
  if (name == "closed_form_quadratic") return CertificateMethod::closed_form_quadratic;
  if (name == "sampled") return CertificateMethod::sampled;
  throw InvalidMethodError("unknown certificate method '" + std::string(name) + "'");
}

Certificate make_certificate(Ball ball, double c, double lhs, CertificateMethod method,
                             std::int64_t sample_count) {
  Certificate cert;
  cert.rhs = ball.radius * c;
  cert.ball = std::move(ball);
  cert.c = c;
  cert.lhs = lhs;
  cert.slack = cert.rhs - cert.lhs;
  cert.passed = cert.lhs <= cert.rhs;
  cert.method = method;
  cert.sample_count = sample_count;
  return cert;
}

double quadratic_domination_constant(double lambda, double x, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  double distance = 0.0;  // distance from 0 to the interval
  if (x - r >= 0.0) {
    distance = x - r;
  } else if (x + r <= 0.0) {
    distance = -x - r;
  }
  return 2.0 * std::abs(lambda) * distance;
}

void SamplingConfig::validate() const {
  if (samples_per_axis < 2) throw ConfigError("method.samples_per_axis", "must be at least 2");
  if (!(residual_floor > 0.0)) throw ConfigError("method.residual_floor", "must be positive");
  if (!(safety > 0.0 && safety <= 1.0)) throw ConfigError("method.safety", "must lie in (0, 1]");
  if (max_points < 1) throw ConfigError("method.max_points", "must be positive");
}

namespace {

struct RatioMin {
  double value = std::numeric_limits<double>::infinity();
  std::int64_t counted = 0;

  void add(const ResidualProblem& problem, const Vector& v, double floor) {
    const PhiEvaluation e = evaluate_phi(problem, v);
    if (!(e.residual_norm > floor)) return;
    value = std::min(value, e.gradient.norm() / e.residual_norm);
    ++counted;
  }
  void merge(const RatioMin& other) {
    value = std::min(value, other.value);
    counted += other.counted;
  }
};

// Evaluates `visit(begin, end, acc)` over [0, count) on a few threads. The
// reduction is a minimum, so the result does not depend on the split.
template <typename Visit>
RatioMin parallel_min(std::int64_t count, Visit visit) {
  constexpr std::int64_t kMinPerThread = 4096;
  const auto hw = static_cast<std::int64_t>(std::max(1u, std::thread::hardware_concurrency()));
  const std::int64_t workers = std::clamp<std::int64_t>(count / kMinPerThread, 1, hw);
  std::vector<RatioMin> partial(static_cast<std::size_t>(workers));
  if (workers == 1) {
    visit(0, count, partial[0]);
    return partial[0];
  }
  {
    std::vector<std::jthread> pool;
    const std::int64_t chunk = (count + workers - 1) / workers;
    for (std::int64_t w = 0; w < workers; ++w) {
      const std::int64_t begin = w * chunk;
      const std::int64_t end = std::min(count, begin + chunk);
      pool.emplace_back([&, begin, end, w] { visit(begin, end, partial[static_cast<std::size_t>(w)]); });
    }
  }
  RatioMin total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

std::int64_t capped_power(std::int64_t base, Eigen::Index exponent, std::int64_t cap) {
  std::int64_t result = 1;
  for (Eigen::Index i = 0; i < exponent; ++i) {
    if (result > cap / base) return cap;
    result *= base;
  }
  return std::min(result, cap);
}

}  // namespace

SampledConstant estimate_domination_constant(const ResidualProblem& problem, const Ball& ball,
                                             const SamplingConfig& config) {
  config.validate();
  problem.check_input(ball.center);
  const Eigen::Index n = problem.input_dim();
  SampledConstant out;
  RatioMin found;

  if (n == 1) {
    const std::vector<double> grid =
        interval_grid(ball.center[0], ball.radius, config.samples_per_axis);
    out.sample_count = static_cast<std::int64_t>(grid.size());
    found = parallel_min(out.sample_count, [&](std::int64_t begin, std::int64_t end, RatioMin& acc) {
      Vector v(1);
      for (std::int64_t k = begin; k < end; ++k) {
        v[0] = grid[static_cast<std::size_t>(k)];
        acc.add(problem, v, config.residual_floor);
      }
    });
  } else {
    const std::int64_t count = capped_power(config.samples_per_axis, n, config.max_points);
    const BallSequence sequence(ball.center, ball.radius, config.seed);
    out.sample_count = count + 1;
    found = parallel_min(count, [&](std::int64_t begin, std::int64_t end, RatioMin& acc) {
      Vector v;
      for (std::int64_t k = begin; k < end; ++k) {
        sequence.point(static_cast<std::uint64_t>(k), v);
        acc.add(problem, v, config.residual_floor);
      }
    });
    found.add(problem, ball.center, config.residual_floor);
  }

  out.ratio_count = found.counted;
  out.c = found.counted > 0 ? config.safety * found.value : 0.0;
  return out;
}

double domination_constant_sampled(const ResidualProblem& problem, const Ball& ball,
                                   int samples_per_axis, double residual_floor, double safety) {
  SamplingConfig config;
  config.samples_per_axis = samples_per_axis;
  config.residual_floor = residual_floor;
  config.safety = safety;
  return estimate_domination_constant(problem, ball, config).c;
}

Certificate certify(const ResidualProblem& problem, const Ball& ball, const CertifyConfig& config) {
  problem.check_input(ball.center);
  const double lhs = problem.norm(problem.residual(ball.center));
  if (config.method == CertificateMethod::closed_form_quadratic) {
    if (!problem.quadratic()) {
      throw InvalidMethodError("closed_form_quadratic applies only to the built-in quadratic, not '" +
                               problem.name() + "'");
    }
    const double c = quadratic_domination_constant(problem.quadratic()->lambda, ball.center[0], ball.radius);
    return make_certificate(ball, c, lhs, CertificateMethod::closed_form_quadratic, 0);
  }
  const SampledConstant sampled = estimate_domination_constant(problem, ball, config.sampling);
  return make_certificate(ball, sampled.c, lhs, CertificateMethod::sampled, sampled.sample_count);
}

}  // namespace zerocert
