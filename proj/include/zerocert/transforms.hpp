#pragma once

// Equivalent reformulations of F(u) = 0.
//
// Dependent-variable transforms A act on the codomain (A(0) = 0, invertible),
// giving A o F with the same zeros. Independent-variable transforms B act on
// the domain, giving G = F o B^-1, whose zeros are the B-images of the zeros
// of F. Either may turn a failing certificate into a passing one.

#include <string_view>
#include <vector>

#include "zerocert/certificate.hpp"
#include "zerocert/problems.hpp"

namespace zerocert {

enum class DependentFamily { linear_scale, cubic_perturbation };

// Scalar map y -> A(y), applied componentwise on vector codomains.
//   linear_scale:       A(y) = alpha y,          alpha != 0
//   cubic_perturbation: A(y) = y + beta y^3,     beta >= 0
class DependentTransform {
 public:
  static DependentTransform linear_scale(double alpha);
  static DependentTransform cubic_perturbation(double beta);

  DependentFamily family() const { return family_; }
  double parameter() const { return parameter_; }

  double forward(double y) const;
  double derivative(double y) const;
  // Cubic family: safeguarded Newton on the monotone cubic, |error| <= 1e-14 (relative).
  double inverse(double y) const;

 private:
  DependentTransform(DependentFamily family, double parameter) : family_(family), parameter_(parameter) {}

  DependentFamily family_;
  double parameter_;
};

enum class IndependentFamily { scale, affine };

// B(v) = mu v + nu (nu = 0 for the scale family), coordinatewise.
class IndependentTransform {
 public:
  static IndependentTransform scale(double mu);
  static IndependentTransform affine(double mu, double shift);

  IndependentFamily family() const { return family_; }
  double mu() const { return mu_; }
  double shift() const { return shift_; }

  Vector forward(const Vector& v) const;
  Vector inverse(const Vector& v) const;
  double derivative() const { return mu_; }
  double inverse_derivative() const { return 1.0 / mu_; }

 private:
  IndependentTransform(IndependentFamily family, double mu, double shift)
      : family_(family), mu_(mu), shift_(shift) {}

  IndependentFamily family_;
  double mu_;
  double shift_;
};

// (outer o inner)(v) = outer(inner(v)); the affine group is closed under composition.
IndependentTransform compose(const IndependentTransform& outer, const IndependentTransform& inner);

// v -> A(F(v)), Jacobian A'(F(v)) DF(v).
ResidualProblem apply_dependent(const DependentTransform& transform, const ResidualProblem& problem);

// G = A^-1 o F, so that A o G reproduces F.
ResidualProblem recover_problem_dependent(const DependentTransform& transform,
                                          const ResidualProblem& problem);

// v -> F(B(v)).
ResidualProblem apply_independent(const IndependentTransform& transform, const ResidualProblem& problem);

// G = F o B^-1, so that G o B reproduces F; a zero u of F maps to the zero B(u) of G.
ResidualProblem recover_problem_independent(const IndependentTransform& transform,
                                            const ResidualProblem& problem);

// Zero of F corresponding to a zero v* of G = F o B^-1.
Vector pull_back_zero(const IndependentTransform& transform, const Vector& v_star);

// |A(g) / (g A'(g))|; a lower bound c_G / c of this over the ball lets the
// domination condition for A o G carry over to G.
double dependent_condition_ratio(const DependentTransform& transform, double g);

// (B^-1)'(B(v)) = 1 / B'(v).
double independent_condition_value(const IndependentTransform& transform, double v);

// Closed-form certificate for G(v) = (lambda / mu^2) v^2 - 1 on B_r(x).
//
// `certificate` is stated in the scale of the original equation:
//   lhs = |lambda x^2 - mu^2|,  c = c_{lambda,x,r},  rhs = r c.
// The `direct_*` fields hold the same test evaluated on G itself:
//   lhs = |(lambda/mu^2) x^2 - 1|,  c = 2|lambda/mu^2| * bracket,  rhs = r c.
// The two are the same inequality multiplied through by mu^2.
struct TransformedQuadraticCertificate {
  double mu = 1.0;
  Certificate certificate;
  double direct_c = 0.0;
  double direct_lhs = 0.0;
  double direct_rhs = 0.0;
  bool direct_passed = false;

  bool verdicts_agree() const { return certificate.passed == direct_passed; }
};

TransformedQuadraticCertificate transformed_certificate_quadratic(double lambda, double mu, double x,
                                                                  double r);

enum class GridSpacing { linear, geometric };

std::string_view to_string(GridSpacing spacing);
GridSpacing grid_spacing_from_string(std::string_view name);

struct MuGridConfig {
  double lower = 0.5;
  double upper = 3.0;
  int size = 26;
  GridSpacing spacing = GridSpacing::linear;
  // Also sweep -mu for every positive grid value.
  bool mirror_negative = false;
  // Grid values with |mu| <= zero_exclusion * max(|lower|, |upper|) are dropped.
  double zero_exclusion = 1e-6;
};

struct MuGrid {
  std::vector<double> values;
  int excluded = 0;
  // Half-width of the neighbourhood of 0 that was cut out (0 if none).
  double excluded_radius = 0.0;
};

// Throws ConfigError when the effective grid is empty.
MuGrid build_mu_grid(const MuGridConfig& config);

struct SweepEntry {
  double mu = 1.0;
  Certificate certificate;
};

struct TransformSearchResult {
  double best_parameter = 1.0;
  Certificate certificate;
  std::vector<SweepEntry> sweep;
  bool any_passed = false;
  int excluded = 0;
  double excluded_radius = 0.0;
};

// Certifies G = F o (mu v)^-1 on the ball for every grid value of mu.
//
// closed_form_quadratic uses transformed_certificate_quadratic (the problem
// must be the built-in quadratic); sampled recomputes c on each G.
// The best entry maximizes slack among passing entries (among all entries if
// none pass), ties broken by smallest |mu - 1|, then by smaller mu.
TransformSearchResult search_mu(const ResidualProblem& problem, const Ball& ball, const MuGrid& grid,
                                const CertifyConfig& config);
TransformSearchResult search_mu(const ResidualProblem& problem, const Ball& ball,
                                const MuGridConfig& grid, const CertifyConfig& config);

}  // namespace zerocert
