#include "zerocert/functional.hpp"

#include <algorithm>
#include <cmath>

namespace zerocert {

double phi(const ResidualProblem& problem, const Vector& v) {
  return 0.5 * problem.squared_norm(problem.residual(v));
}

Vector grad_phi(const ResidualProblem& problem, const Vector& v) {
  const Vector r = problem.residual(v);
  return problem.adjoint(v, problem.apply_weights(r));
}

PhiEvaluation evaluate_phi(const ResidualProblem& problem, const Vector& v) {
  PhiEvaluation out;
  out.residual = problem.residual(v);
  const double sq = problem.squared_norm(out.residual);
  out.residual_norm = std::sqrt(sq);
  out.value = 0.5 * sq;
  out.gradient = problem.adjoint(v, problem.apply_weights(out.residual));
  return out;
}

GradientCheckReport check_gradient(const ResidualProblem& problem, const Vector& v) {
  GradientCheckReport report;
  report.point = v;
  report.analytic_gradient = grad_phi(problem, v);
  report.numeric_gradient.resize(v.size());
  // phi(v+) - phi(v-) is formed as 1/2 sum w (F+ - F-)(F+ + F-): the same
  // central difference quotient without cancelling two large values of phi.
  Vector probe = v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double step = fd_step(v[i]);
    probe[i] = v[i] + step;
    const double upper = probe[i];
    const Vector forward = problem.residual(probe);
    probe[i] = v[i] - step;
    const double lower = probe[i];
    const Vector backward = problem.residual(probe);
    probe[i] = v[i];
    const Vector delta = problem.apply_weights(forward - backward);
    report.numeric_gradient[i] = 0.5 * delta.dot(forward + backward) / (upper - lower);
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double g = report.numeric_gradient[i];
    report.max_relative_error = std::max(
        report.max_relative_error, std::abs(report.analytic_gradient[i] - g) / (1.0 + std::abs(g)));
  }
  return report;
}

}  // namespace zerocert
