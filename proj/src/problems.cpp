#include "zerocert/problems.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "zerocert/errors.hpp"
#include "zerocert/kernels.hpp"

namespace zerocert {

namespace {

std::span<const double> view(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

ResidualProblem::ResidualProblem(Definition def) {
  if (def.input_dim <= 0 || def.output_dim <= 0) {
    throw std::invalid_argument("residual problem '" + def.name + "' needs positive dimensions");
  }
  if (!def.residual) {
    throw std::invalid_argument("residual problem '" + def.name + "' has no residual rule");
  }
  if (def.weights) {
    if (def.weights->size() != def.output_dim) {
      throw ShapeError("codomain weights must have length " + std::to_string(def.output_dim));
    }
    if ((def.weights->array() <= 0.0).any()) {
      throw std::invalid_argument("codomain weights must be positive");
    }
  }
  def_ = std::make_shared<const Definition>(std::move(def));
}

void ResidualProblem::check_input(const Vector& v) const {
  if (v.size() != def_->input_dim) {
    throw ShapeError("problem '" + def_->name + "' expects an input of length " +
                     std::to_string(def_->input_dim) + ", got " + std::to_string(v.size()));
  }
}

Vector ResidualProblem::residual(const Vector& v) const {
  check_input(v);
  return def_->residual(v);
}

JacobianResult ResidualProblem::jacobian(const Vector& v) const {
  check_input(v);
  if (def_->jacobian) {
    return {def_->jacobian(v), def_->jacobian_inherits_approximation};
  }
  return {finite_difference_jacobian(*this, v), true};
}

Vector ResidualProblem::adjoint(const Vector& v, const Vector& y) const {
  check_input(v);
  if (y.size() != def_->output_dim) {
    throw ShapeError("adjoint expects a codomain vector of length " +
                     std::to_string(def_->output_dim));
  }
  if (def_->adjoint) return def_->adjoint(v, y);
  return jacobian(v).values.transpose() * y;
}

double ResidualProblem::squared_norm(const Vector& y) const {
  if (def_->weights) return kernels::weighted_squared_norm(view(y), view(*def_->weights));
  return kernels::squared_norm(view(y));
}

double ResidualProblem::norm(const Vector& y) const { return std::sqrt(squared_norm(y)); }

Vector ResidualProblem::apply_weights(const Vector& y) const {
  if (def_->weights) return def_->weights->cwiseProduct(y);
  return y;
}

Vector eval_residual(const ResidualProblem& problem, const Vector& v) {
  return problem.residual(v);
}

JacobianResult eval_jacobian(const ResidualProblem& problem, const Vector& v) {
  return problem.jacobian(v);
}

Matrix finite_difference_jacobian(const ResidualProblem& problem, const Vector& v) {
  problem.check_input(v);
  const Eigen::Index n = problem.input_dim();
  Matrix jac(problem.output_dim(), n);
  Vector probe = v;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double step = fd_step(v[j]);
    probe[j] = v[j] + step;
    const Vector forward = problem.residual(probe);
    probe[j] = v[j] - step;
    const Vector backward = problem.residual(probe);
    probe[j] = v[j];
    jac.col(j) = (forward - backward) / (2.0 * step);
  }
  return jac;
}

ResidualProblem make_quadratic(QuadraticParams params) {
  if (!std::isfinite(params.lambda)) {
    throw std::invalid_argument("quadratic lambda must be finite");
  }
  const double lambda = params.lambda;
  ResidualProblem::Definition def;
  def.name = "quadratic";
  def.input_dim = 1;
  def.output_dim = 1;
  def.residual = [lambda](const Vector& v) {
    Vector out(1);
    out[0] = lambda * (v[0] * v[0]) - 1.0;
    return out;
  };
  def.jacobian = [lambda](const Vector& v) {
    Matrix out(1, 1);
    out(0, 0) = 2.0 * lambda * v[0];
    return out;
  };
  def.quadratic = params;
  return ResidualProblem(std::move(def));
}

Vector bvp_nodes(int grid_points) {
  const double h = 1.0 / (grid_points + 1);
  Vector t(grid_points);
  for (int i = 0; i < grid_points; ++i) t[i] = (i + 1) * h;
  return t;
}

ResidualProblem make_bvp(const BvpOptions& options) {
  if (options.grid_points < 2) {
    throw ConfigError("problem.grid_points", "bvp needs at least 2 interior grid points");
  }
  if (!options.forcing) throw ConfigError("problem.forcing", "bvp needs a forcing rule");
  const int n = options.grid_points;
  const double h = 1.0 / (n + 1);
  const double inv_h2 = 1.0 / (h * h);
  const double gamma = options.nonlinearity;

  // Forcing is sampled once; the problem never calls back into it.
  const Vector nodes = bvp_nodes(n);
  Vector f(n);
  for (int i = 0; i < n; ++i) f[i] = options.forcing(nodes[i]);
  auto forcing = std::make_shared<const Vector>(std::move(f));

  ResidualProblem::Definition def;
  def.name = "bvp";
  def.input_dim = n;
  def.output_dim = n;
  def.residual = [forcing, inv_h2, gamma, n](const Vector& v) {
    Vector out(n);
    kernels::active().bvp_residual(v.data(), forcing->data(), static_cast<std::size_t>(n), inv_h2,
                                   gamma, out.data());
    return out;
  };
  def.jacobian = [inv_h2, gamma, n](const Vector& v) {
    Matrix jac = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      jac(i, i) = 2.0 * inv_h2 + 3.0 * gamma * (v[i] * v[i]);
      if (i > 0) jac(i, i - 1) = -inv_h2;
      if (i + 1 < n) jac(i, i + 1) = -inv_h2;
    }
    return jac;
  };
  // The Jacobian is symmetric, so the adjoint is the Jacobian action.
  def.adjoint = [inv_h2, gamma, n](const Vector& v, const Vector& y) {
    Vector out(n);
    kernels::active().bvp_apply_jacobian(v.data(), y.data(), static_cast<std::size_t>(n), inv_h2,
                                         gamma, out.data());
    return out;
  };
  if (options.quadrature_weights) def.weights = Vector::Constant(n, h);
  return ResidualProblem(std::move(def));
}

ResidualProblem make_bvp(int grid_points, double nonlinearity,
                         std::function<double(double)> forcing) {
  return make_bvp(BvpOptions{grid_points, nonlinearity, std::move(forcing), false});
}

std::function<double(double)> manufactured_sine_forcing(double nonlinearity) {
  return [nonlinearity](double t) {
    const double s = std::sin(std::numbers::pi * t);
    return std::numbers::pi * std::numbers::pi * s + nonlinearity * s * s * s;
  };
}

}  // namespace zerocert
