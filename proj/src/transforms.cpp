#include "zerocert/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "zerocert/errors.hpp"

namespace zerocert {

namespace {

std::string format_parameter(double value) {
  std::ostringstream os;
  os.precision(6);
  os << value;
  return os.str();
}

std::string transform_label(const DependentTransform& t) {
  const char* family = t.family() == DependentFamily::linear_scale ? "linear_scale" : "cubic_perturbation";
  return std::string(family) + "(" + format_parameter(t.parameter()) + ")";
}

std::string transform_label(const IndependentTransform& t) {
  if (t.family() == IndependentFamily::scale) return "scale(" + format_parameter(t.mu()) + ")";
  return "affine(" + format_parameter(t.mu()) + "," + format_parameter(t.shift()) + ")";
}

}  // namespace

DependentTransform DependentTransform::linear_scale(double alpha) {
  if (!(alpha != 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("linear_scale needs a finite nonzero alpha");
  }
  return {DependentFamily::linear_scale, alpha};
}

DependentTransform DependentTransform::cubic_perturbation(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InvalidParameterError("cubic_perturbation needs a finite beta >= 0");
  }
  return {DependentFamily::cubic_perturbation, beta};
}

double DependentTransform::forward(double y) const {
  if (family_ == DependentFamily::linear_scale) return parameter_ * y;
  return y + parameter_ * (y * y * y);
}

double DependentTransform::derivative(double y) const {
  if (family_ == DependentFamily::linear_scale) return parameter_;
  return 1.0 + 3.0 * parameter_ * (y * y);
}

double DependentTransform::inverse(double z) const {
  if (family_ == DependentFamily::linear_scale) return z / parameter_;
  const double beta = parameter_;
  if (beta == 0.0 || z == 0.0) return z;

  // y + beta y^3 = |z| has a unique root in [0, min(|z|, cbrt(|z|/beta))].
  // The cubic is convex and increasing there, so Newton from the right end
  // decreases monotonically; bisection guards against overshoot.
  const double target = std::abs(z);
  double lo = 0.0;
  double hi = std::min(target, std::cbrt(target / beta));
  double y = hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double value = y + beta * (y * y * y) - target;
    if (value == 0.0) break;
    if (value > 0.0) {
      hi = y;
    } else {
      lo = y;
    }
    double next = y - value / (1.0 + 3.0 * beta * (y * y));
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 1e-14 * std::max(std::abs(next), 1e-300)) {
      y = next;
      break;
    }
    y = next;
  }
  return std::copysign(y, z);
}

IndependentTransform IndependentTransform::scale(double mu) {
  if (!(mu != 0.0) || !std::isfinite(mu)) throw InvalidParameterError("scale needs a finite nonzero mu");
  return {IndependentFamily::scale, mu, 0.0};
}

IndependentTransform IndependentTransform::affine(double mu, double shift) {
  if (!(mu != 0.0) || !std::isfinite(mu)) throw InvalidParameterError("affine needs a finite nonzero mu");
  if (!std::isfinite(shift)) throw InvalidParameterError("affine needs a finite shift");
  return {IndependentFamily::affine, mu, shift};
}

Vector IndependentTransform::forward(const Vector& v) const {
  if (family_ == IndependentFamily::scale) return mu_ * v;
  return (mu_ * v).array() + shift_;
}

Vector IndependentTransform::inverse(const Vector& v) const {
  if (family_ == IndependentFamily::scale) return v / mu_;
  return (v.array() - shift_) / mu_;
}

IndependentTransform compose(const IndependentTransform& outer, const IndependentTransform& inner) {
  // outer(inner(v)) = mu_o (mu_i v + nu_i) + nu_o
  const double mu = outer.mu() * inner.mu();
  const double shift = outer.mu() * inner.shift() + outer.shift();
  if (outer.family() == IndependentFamily::scale && inner.family() == IndependentFamily::scale) {
    return IndependentTransform::scale(mu);
  }
  return IndependentTransform::affine(mu, shift);
}

ResidualProblem apply_dependent(const DependentTransform& transform, const ResidualProblem& problem) {
  ResidualProblem::Definition def;
  def.name = transform_label(transform) + " o " + problem.name();
  def.input_dim = problem.input_dim();
  def.output_dim = problem.output_dim();
  def.weights = problem.weights();
  def.jacobian_inherits_approximation = !problem.has_analytic_jacobian();
  def.residual = [transform, problem](const Vector& v) {
    return problem.residual(v).unaryExpr([&](double y) { return transform.forward(y); }).eval();
  };
  def.jacobian = [transform, problem](const Vector& v) {
    const Vector r = problem.residual(v);
    const Vector scale = r.unaryExpr([&](double y) { return transform.derivative(y); });
    return (scale.asDiagonal() * problem.jacobian(v).values).eval();
  };
  def.adjoint = [transform, problem](const Vector& v, const Vector& y) {
    const Vector r = problem.residual(v);
    const Vector scale = r.unaryExpr([&](double value) { return transform.derivative(value); });
    return problem.adjoint(v, scale.cwiseProduct(y));
  };
  return ResidualProblem(std::move(def));
}

ResidualProblem recover_problem_dependent(const DependentTransform& transform,
                                          const ResidualProblem& problem) {
  ResidualProblem::Definition def;
  def.name = "inverse " + transform_label(transform) + " o " + problem.name();
  def.input_dim = problem.input_dim();
  def.output_dim = problem.output_dim();
  def.weights = problem.weights();
  def.jacobian_inherits_approximation = !problem.has_analytic_jacobian();
  // (A^-1)'(z) = 1 / A'(A^-1(z))
  auto inverse_slopes = [transform](const Vector& r) {
    return r.unaryExpr([&](double z) { return 1.0 / transform.derivative(transform.inverse(z)); }).eval();
  };
  def.residual = [transform, problem](const Vector& v) {
    return problem.residual(v).unaryExpr([&](double z) { return transform.inverse(z); }).eval();
  };
  def.jacobian = [inverse_slopes, problem](const Vector& v) {
    return (inverse_slopes(problem.residual(v)).asDiagonal() * problem.jacobian(v).values).eval();
  };
  def.adjoint = [inverse_slopes, problem](const Vector& v, const Vector& y) {
    return problem.adjoint(v, inverse_slopes(problem.residual(v)).cwiseProduct(y));
  };
  return ResidualProblem(std::move(def));
}

ResidualProblem apply_independent(const IndependentTransform& transform, const ResidualProblem& problem) {
  ResidualProblem::Definition def;
  def.name = problem.name() + " o " + transform_label(transform);
  def.input_dim = problem.input_dim();
  def.output_dim = problem.output_dim();
  def.weights = problem.weights();
  def.jacobian_inherits_approximation = !problem.has_analytic_jacobian();
  const double slope = transform.derivative();
  def.residual = [transform, problem](const Vector& v) { return problem.residual(transform.forward(v)); };
  def.jacobian = [transform, problem, slope](const Vector& v) {
    return (problem.jacobian(transform.forward(v)).values * slope).eval();
  };
  def.adjoint = [transform, problem, slope](const Vector& v, const Vector& y) {
    return (problem.adjoint(transform.forward(v), y) * slope).eval();
  };
  return ResidualProblem(std::move(def));
}

ResidualProblem recover_problem_independent(const IndependentTransform& transform,
                                            const ResidualProblem& problem) {
  ResidualProblem::Definition def;
  def.name = problem.name() + " o inverse " + transform_label(transform);
  def.input_dim = problem.input_dim();
  def.output_dim = problem.output_dim();
  def.weights = problem.weights();
  def.jacobian_inherits_approximation = !problem.has_analytic_jacobian();
  const double slope = transform.inverse_derivative();
  def.residual = [transform, problem](const Vector& v) { return problem.residual(transform.inverse(v)); };
  def.jacobian = [transform, problem, slope](const Vector& v) {
    return (problem.jacobian(transform.inverse(v)).values * slope).eval();
  };
  def.adjoint = [transform, problem, slope](const Vector& v, const Vector& y) {
    return (problem.adjoint(transform.inverse(v), y) * slope).eval();
  };
  return ResidualProblem(std::move(def));
}

Vector pull_back_zero(const IndependentTransform& transform, const Vector& v_star) {
  return transform.inverse(v_star);
}

double dependent_condition_ratio(const DependentTransform& transform, double g) {
  const double slope = transform.derivative(g);
  if (g == 0.0 || slope == 0.0) {
    throw SingularRatioError("dependent condition ratio is undefined at g = " + format_parameter(g));
  }
  return std::abs(transform.forward(g) / (g * slope));
}

double independent_condition_value(const IndependentTransform& transform, double /*v*/) {
  const double slope = transform.derivative();
  if (slope == 0.0) throw SingularRatioError("independent transform has zero derivative");
  return 1.0 / slope;
}

TransformedQuadraticCertificate transformed_certificate_quadratic(double lambda, double mu, double x,
                                                                  double r) {
  if (!(mu != 0.0) || !std::isfinite(mu)) throw InvalidParameterError("mu must be finite and nonzero");
  TransformedQuadraticCertificate out;
  out.mu = mu;
  const double mu2 = mu * mu;

  const double c = quadratic_domination_constant(lambda, x, r);
  const double lhs = std::abs(lambda * (x * x) - mu2);
  out.certificate = make_certificate(Ball(x, r), c, lhs, CertificateMethod::closed_form_quadratic, 0);

  const double g_lambda = lambda / mu2;
  out.direct_c = quadratic_domination_constant(g_lambda, x, r);
  out.direct_lhs = std::abs(g_lambda * (x * x) - 1.0);
  out.direct_rhs = r * out.direct_c;
  out.direct_passed = out.direct_lhs <= out.direct_rhs;
  return out;
}

std::string_view to_string(GridSpacing spacing) {
  return spacing == GridSpacing::linear ? "linear" : "geometric";
}

GridSpacing grid_spacing_from_string(std::string_view name) {
  if (name == "linear") return GridSpacing::linear;
  if (name == "geometric") return GridSpacing::geometric;
  throw ConfigError("transform.spacing", "expected 'linear' or 'geometric', got '" + std::string(name) + "'");
}

namespace {

std::vector<double> linear_points(double lo, double hi, int count) {
  if (count == 1 || lo == hi) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (count - 1);
  out.back() = hi;
  return out;
}

// Log-spaced on [lo, hi] with 0 < lo <= hi.
std::vector<double> geometric_points(double lo, double hi, int count) {
  if (count == 1 || lo == hi) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  const double ratio = std::log(hi / lo);
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = lo * std::exp(ratio * k / (count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace

MuGrid build_mu_grid(const MuGridConfig& config) {
  if (!std::isfinite(config.lower) || !std::isfinite(config.upper)) {
    throw ConfigError("transform.mu_min", "mu range must be finite");
  }
  if (config.lower > config.upper) throw ConfigError("transform.mu_min", "must not exceed transform.mu_max");
  if (config.size < 1) throw ConfigError("transform.grid_size", "must be at least 1");
  if (!(config.zero_exclusion > 0.0)) throw ConfigError("transform.zero_exclusion", "must be positive");

  MuGrid grid;
  const double span = std::max(std::abs(config.lower), std::abs(config.upper));
  const double radius = config.zero_exclusion * span;
  const bool straddles = config.lower <= radius && config.upper >= -radius;
  if (straddles) grid.excluded_radius = radius;

  std::vector<double> raw;
  if (config.spacing == GridSpacing::linear) {
    raw = linear_points(config.lower, config.upper, config.size);
  } else if (config.lower > 0.0) {
    raw = geometric_points(config.lower, config.upper, config.size);
  } else if (config.upper < 0.0) {
    raw = geometric_points(-config.upper, -config.lower, config.size);
    for (auto& v : raw) v = -v;
  } else {
    // Split around 0: one log-spaced branch on each side of the excluded neighbourhood.
    const int negative = config.lower < -radius ? config.size / 2 : 0;
    const int positive = config.upper > radius ? config.size - negative : 0;
    const double inner = std::nextafter(radius, std::numeric_limits<double>::infinity());
    if (negative > 0) {
      for (double v : geometric_points(inner, -config.lower, negative)) raw.push_back(-v);
    }
    if (positive > 0) {
      for (double v : geometric_points(inner, config.upper, positive)) raw.push_back(v);
    }
  }

  for (double mu : raw) {
    if (std::abs(mu) <= radius) {
      ++grid.excluded;
      continue;
    }
    grid.values.push_back(mu);
    if (config.mirror_negative && mu > 0.0) grid.values.push_back(-mu);
  }
  std::sort(grid.values.begin(), grid.values.end());
  grid.values.erase(std::unique(grid.values.begin(), grid.values.end()), grid.values.end());
  if (grid.values.empty()) throw ConfigError("transform.grid_size", "mu grid is empty after excluding 0");
  return grid;
}

namespace {

// True when `a` ranks ahead of `b` among entries of equal pass status.
bool ranks_ahead(const SweepEntry& a, const SweepEntry& b) {
  if (a.certificate.slack != b.certificate.slack) return a.certificate.slack > b.certificate.slack;
  const double da = std::abs(a.mu - 1.0);
  const double db = std::abs(b.mu - 1.0);
  if (da != db) return da < db;
  return a.mu < b.mu;
}

}  // namespace

TransformSearchResult search_mu(const ResidualProblem& problem, const Ball& ball, const MuGrid& grid,
                                const CertifyConfig& config) {
  if (grid.values.empty()) throw ConfigError("transform.grid_size", "mu grid is empty");
  const bool closed_form = config.method == CertificateMethod::closed_form_quadratic;
  if (closed_form && !problem.quadratic()) {
    throw InvalidMethodError("closed_form_quadratic search applies only to the built-in quadratic");
  }
  problem.check_input(ball.center);

  TransformSearchResult result;
  result.excluded = grid.excluded;
  result.excluded_radius = grid.excluded_radius;
  result.sweep.resize(grid.values.size());
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    const double mu = grid.values[k];
    SweepEntry& entry = result.sweep[k];
    entry.mu = mu;
    if (closed_form) {
      entry.certificate =
          transformed_certificate_quadratic(problem.quadratic()->lambda, mu, ball.center[0], ball.radius)
              .certificate;
    } else {
      const ResidualProblem transformed = recover_problem_independent(IndependentTransform::scale(mu), problem);
      entry.certificate = certify(transformed, ball, config);
    }
    result.any_passed = result.any_passed || entry.certificate.passed;
  }

  const SweepEntry* best = nullptr;
  for (const SweepEntry& entry : result.sweep) {
    if (result.any_passed && !entry.certificate.passed) continue;
    if (best == nullptr || ranks_ahead(entry, *best)) best = &entry;
  }
  result.best_parameter = best->mu;
  result.certificate = best->certificate;
  return result;
}

TransformSearchResult search_mu(const ResidualProblem& problem, const Ball& ball,
                                const MuGridConfig& grid, const CertifyConfig& config) {
  return search_mu(problem, ball, build_mu_grid(grid), config);
}

}  // namespace zerocert
