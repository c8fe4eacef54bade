#include "zerocert/descent.hpp"

#include <cmath>
#include <span>
#include <string>

#include "zerocert/errors.hpp"
#include "zerocert/functional.hpp"
#include "zerocert/kernels.hpp"

namespace zerocert {

namespace {

constexpr double kStepUnderflow = 1e-16;
constexpr double kContainmentSlack = 1e-12;

std::span<const double> view(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<double> view(Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Radial projection onto the closed ball.
void project(const Ball& ball, Vector& v) {
  Vector offset = v - ball.center;
  const double dist = offset.norm();
  if (dist <= ball.radius) return;
  v = ball.center + (ball.radius / dist) * offset;
}

Vector search_direction(const ResidualProblem& problem, const Vector& v, const PhiEvaluation& at,
                        DescentDirection direction) {
  Vector steepest = -at.gradient;
  if (direction == DescentDirection::steepest) return steepest;
  // Gauss-Newton: minimize |W^(1/2) (F + J d)|.
  Matrix jac = problem.jacobian(v).values;
  Vector rhs = -at.residual;
  if (const auto& w = problem.weights()) {
    const Vector root = w->cwiseSqrt();
    jac = root.asDiagonal() * jac;
    rhs = root.cwiseProduct(rhs);
  }
  Vector step = jac.colPivHouseholderQr().solve(rhs);
  if (!step.allFinite() || kernels::dot(view(step), view(at.gradient)) >= 0.0) return steepest;
  return step;
}

}  // namespace

std::string_view to_string(BallPolicy policy) {
  return policy == BallPolicy::clip_to_ball ? "clip_to_ball" : "reject_outside";
}

std::string_view to_string(DescentDirection direction) {
  return direction == DescentDirection::steepest ? "steepest" : "gauss_newton";
}

std::string_view to_string(DescentStatus status) {
  switch (status) {
    case DescentStatus::converged:
      return "converged";
    case DescentStatus::max_iterations:
      return "max_iterations";
    case DescentStatus::stalled:
      return "stalled";
  }
  return "unknown";
}

BallPolicy ball_policy_from_string(std::string_view name) {
  if (name == "clip_to_ball") return BallPolicy::clip_to_ball;
  if (name == "reject_outside") return BallPolicy::reject_outside;
  throw ConfigError("descent.ball_policy", "expected 'clip_to_ball' or 'reject_outside', got '" +
                                               std::string(name) + "'");
}

DescentDirection descent_direction_from_string(std::string_view name) {
  if (name == "steepest") return DescentDirection::steepest;
  if (name == "gauss_newton") return DescentDirection::gauss_newton;
  throw ConfigError("descent.direction", "expected 'steepest' or 'gauss_newton', got '" +
                                             std::string(name) + "'");
}

void DescentConfig::validate() const {
  if (!(residual_tolerance > 0.0)) throw ConfigError("descent.residual_tolerance", "must be positive");
  if (max_iterations < 0) throw ConfigError("descent.max_iterations", "must be non-negative");
  if (!(initial_step > 0.0)) throw ConfigError("descent.initial_step", "must be positive");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
    throw ConfigError("descent.backtrack_factor", "must lie in (0, 1)");
  }
  if (!(sufficient_decrease > 0.0 && sufficient_decrease < 1.0)) {
    throw ConfigError("descent.sufficient_decrease", "must lie in (0, 1)");
  }
}

DescentResult solve(const ResidualProblem& problem, const Ball& ball, const DescentConfig& config) {
  config.validate();
  problem.check_input(ball.center);

  DescentResult result;
  Vector v = ball.center;
  PhiEvaluation current = evaluate_phi(problem, v);
  Vector trial(v.size());
  Vector displacement(v.size());

  int k = 0;
  for (;; ++k) {
    if (current.residual_norm <= config.residual_tolerance) {
      result.status = DescentStatus::converged;
      break;
    }
    if (k >= config.max_iterations) {
      result.status = DescentStatus::max_iterations;
      break;
    }

    const Vector direction = search_direction(problem, v, current, config.direction);
    double t = config.initial_step;
    bool accepted = false;
    bool no_progress = false;
    PhiEvaluation next;
    while (t >= kStepUnderflow) {
      trial = v;
      kernels::axpy(t, view(direction), view(trial));
      bool outside = false;
      if (config.ball_policy == BallPolicy::clip_to_ball) {
        project(ball, trial);
      } else {
        outside = !ball.contains(trial);
      }
      if (!outside) {
        displacement = trial - v;
        if (displacement.cwiseAbs().maxCoeff() == 0.0) {
          // Projection swallowed the whole step: the iterate is pinned to the sphere.
          no_progress = true;
          break;
        }
        next = evaluate_phi(problem, trial);
        const double predicted = kernels::dot(view(current.gradient), view(displacement));
        if (next.value <= current.value + config.sufficient_decrease * predicted) {
          accepted = true;
          break;
        }
      }
      t *= config.backtrack_factor;
    }

    if (!accepted || no_progress) {
      result.status = DescentStatus::stalled;
      break;
    }
    if (config.record_trace) {
      result.trace.push_back({k, current.value, current.gradient.norm(), t});
    }
    v = trial;
    current = std::move(next);
  }

  if (config.record_trace) result.trace.push_back({k, current.value, current.gradient.norm(), 0.0});
  result.u = v;
  result.residual_norm = current.residual_norm;
  result.iterations = k;
  result.in_ball = ball.contains(v, kContainmentSlack);
  return result;
}

bool verify_solution(const ResidualProblem& problem, const Vector& u, const Ball& ball, double tolerance) {
  problem.check_input(u);
  if (u.size() != ball.center.size()) return false;
  return problem.norm(problem.residual(u)) <= tolerance && ball.contains(u, kContainmentSlack);
}

}  // namespace zerocert
