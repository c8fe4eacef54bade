#pragma once

// Ball-constrained minimization of phi = |F|^2 / 2 from the ball center.

#include <string_view>
#include <vector>

#include "zerocert/certificate.hpp"
#include "zerocert/problems.hpp"

namespace zerocert {

enum class BallPolicy { clip_to_ball, reject_outside };
enum class DescentDirection { steepest, gauss_newton };
enum class DescentStatus { converged, max_iterations, stalled };

std::string_view to_string(BallPolicy policy);
std::string_view to_string(DescentDirection direction);
std::string_view to_string(DescentStatus status);
BallPolicy ball_policy_from_string(std::string_view name);
DescentDirection descent_direction_from_string(std::string_view name);

struct DescentConfig {
  double residual_tolerance = 1e-10;
  int max_iterations = 10000;
  double initial_step = 1.0;
  double backtrack_factor = 0.5;
  double sufficient_decrease = 1e-4;
  BallPolicy ball_policy = BallPolicy::clip_to_ball;
  DescentDirection direction = DescentDirection::steepest;
  bool record_trace = false;

  // Throws ConfigError naming the offending "descent.*" key.
  void validate() const;
};

struct TraceRow {
  int iteration = 0;
  double phi = 0.0;
  double gradient_norm = 0.0;
  double step = 0.0;  // accepted step length t (0 for the final row)
};

struct DescentResult {
  Vector u;
  double residual_norm = 0.0;
  int iterations = 0;
  bool in_ball = true;
  DescentStatus status = DescentStatus::max_iterations;
  std::vector<TraceRow> trace;
};

// Steepest descent (or Gauss-Newton) on phi with Armijo backtracking. Trial
// points are mapped back into the ball by radial projection (clip_to_ball)
// or rejected and backtracked (reject_outside). The Armijo test uses the
// actual displacement d = P(v - t g) - v:
//     phi(v + d) <= phi(v) + sufficient_decrease * <grad phi(v), d>
// which is the usual t |g|^2 test whenever no projection happened.
// A step length below 1e-16, or a projected step that does not move the
// iterate, ends the run as stalled.
DescentResult solve(const ResidualProblem& problem, const Ball& ball, const DescentConfig& config = {});

// |F(u)| <= tolerance and |u - x| <= r + 1e-12.
bool verify_solution(const ResidualProblem& problem, const Vector& u, const Ball& ball, double tolerance);

}  // namespace zerocert
