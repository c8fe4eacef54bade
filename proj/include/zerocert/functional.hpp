#pragma once

// Least-squares functional phi(v) = |F(v)|^2 / 2 and its gradient DF(v)^T W F(v).

#include "zerocert/problems.hpp"

namespace zerocert {

double phi(const ResidualProblem& problem, const Vector& v);

Vector grad_phi(const ResidualProblem& problem, const Vector& v);

// Both at once, sharing the residual evaluation.
struct PhiEvaluation {
  Vector residual;
  double residual_norm = 0.0;
  double value = 0.0;
  Vector gradient;
};
PhiEvaluation evaluate_phi(const ResidualProblem& problem, const Vector& v);

struct GradientCheckReport {
  Vector point;
  Vector analytic_gradient;
  Vector numeric_gradient;
  // max_i |a_i - g_i| / (1 + |g_i|)
  double max_relative_error = 0.0;
};

// Compares grad_phi with central differences of phi (step fd_step(v_i)).
// The difference of phi values is accumulated residual-wise to avoid
// cancellation when phi is large.
GradientCheckReport check_gradient(const ResidualProblem& problem, const Vector& v);

}  // namespace zerocert
