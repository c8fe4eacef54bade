#pragma once

// Residual maps F: R^n -> R^m whose zeros are sought, plus the built-in
// problem library (scalar quadratic, discretized nonlinear two-point BVP).

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace zerocert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct QuadraticParams {
  double lambda = 1.0;
};

struct JacobianResult {
  Matrix values;
  // True when the problem has no analytic Jacobian and central differences were used.
  bool approximate = false;
};

// Finite-difference step for coordinate value `x`.
inline double fd_step(double x) { return 1e-6 * (1.0 + std::abs(x)); }

// Immutable residual problem. Copies share the same definition; evaluation is
// const and safe to call from several threads at once.
class ResidualProblem {
 public:
  using ResidualFn = std::function<Vector(const Vector&)>;
  using JacobianFn = std::function<Matrix(const Vector&)>;
  // (v, y) -> DF(v)^T y
  using AdjointFn = std::function<Vector(const Vector&, const Vector&)>;

  struct Definition {
    std::string name;
    Eigen::Index input_dim = 0;
    Eigen::Index output_dim = 0;
    ResidualFn residual;
    JacobianFn jacobian;  // empty: central finite differences
    AdjointFn adjoint;    // empty: jacobian(v)^T y
    // Diagonal codomain weights for the norm; empty means Euclidean.
    std::optional<Vector> weights;
    // Set only for the built-in quadratic, enables the closed-form certificate.
    std::optional<QuadraticParams> quadratic;
    // Whether the Jacobian of an analytic composition is itself approximate.
    bool jacobian_inherits_approximation = false;
  };

  explicit ResidualProblem(Definition def);

  const std::string& name() const { return def_->name; }
  Eigen::Index input_dim() const { return def_->input_dim; }
  Eigen::Index output_dim() const { return def_->output_dim; }
  bool has_analytic_jacobian() const {
    return static_cast<bool>(def_->jacobian) && !def_->jacobian_inherits_approximation;
  }
  const std::optional<QuadraticParams>& quadratic() const { return def_->quadratic; }
  const std::optional<Vector>& weights() const { return def_->weights; }

  Vector residual(const Vector& v) const;
  JacobianResult jacobian(const Vector& v) const;
  Vector adjoint(const Vector& v, const Vector& y) const;

  // Norm in the codomain (weighted if the problem carries weights).
  double norm(const Vector& y) const;
  double squared_norm(const Vector& y) const;
  // W y, or y itself when unweighted.
  Vector apply_weights(const Vector& y) const;

  void check_input(const Vector& v) const;

 private:
  std::shared_ptr<const Definition> def_;
};

Vector eval_residual(const ResidualProblem& problem, const Vector& v);
JacobianResult eval_jacobian(const ResidualProblem& problem, const Vector& v);

// Central differences of the residual, step fd_step(v_i) per coordinate.
Matrix finite_difference_jacobian(const ResidualProblem& problem, const Vector& v);

// F(u) = lambda u^2 - 1 on R.
ResidualProblem make_quadratic(QuadraticParams params);

struct BvpOptions {
  int grid_points = 64;
  double nonlinearity = 0.0;
  std::function<double(double)> forcing = [](double) { return 0.0; };
  // Weight the codomain norm by the mesh width h (trapezoid-like quadrature).
  bool quadrature_weights = false;
};

// -u'' + gamma u^3 = f on (0,1), u(0) = u(1) = 0, second-order central
// differences on N interior points, h = 1/(N+1).
ResidualProblem make_bvp(const BvpOptions& options);
ResidualProblem make_bvp(int grid_points, double nonlinearity, std::function<double(double)> forcing);

// Forcing for the manufactured solution u(t) = sin(pi t).
std::function<double(double)> manufactured_sine_forcing(double nonlinearity);

// Grid nodes t_i = i h, i = 1..N.
Vector bvp_nodes(int grid_points);

}  // namespace zerocert
