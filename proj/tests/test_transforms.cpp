#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "zerocert/errors.hpp"
#include "zerocert/transforms.hpp"

using namespace zerocert;

namespace {

Vector scalar(double x) { return Vector::Constant(1, x); }

CertifyConfig closed_form() { return {CertificateMethod::closed_form_quadratic, {}}; }

CertifyConfig sampled(double safety = 0.9, int samples = 1001) {
  CertifyConfig c;
  c.method = CertificateMethod::sampled;
  c.sampling.safety = safety;
  c.sampling.samples_per_axis = samples;
  return c;
}

MuGridConfig linear_grid(double lo, double hi, int size) {
  MuGridConfig g;
  g.lower = lo;
  g.upper = hi;
  g.size = size;
  g.spacing = GridSpacing::linear;
  return g;
}

}  // namespace

TEST_CASE("dependent transforms: membership, derivative, inverse") {
  for (const auto& t : {DependentTransform::linear_scale(3.0), DependentTransform::linear_scale(-0.5),
                        DependentTransform::cubic_perturbation(0.0), DependentTransform::cubic_perturbation(1.0),
                        DependentTransform::cubic_perturbation(7.5)}) {
    CHECK(std::abs(t.forward(0.0)) <= 1e-15);
    for (double y = -10.0; y <= 10.0; y += 0.125) {
      CHECK(std::abs(t.forward(t.inverse(y)) - y) <= 1e-10);
      CHECK(t.derivative(y) != 0.0);
    }
  }
  CHECK(DependentTransform::cubic_perturbation(2.0).derivative(1.0) == 7.0);
  CHECK(DependentTransform::cubic_perturbation(1.0).inverse(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(DependentTransform::cubic_perturbation(1.0).inverse(-30.0) == doctest::Approx(-3.0).epsilon(1e-14));
}

TEST_CASE("dependent transforms reject parameters outside the group") {
  CHECK_THROWS_AS(DependentTransform::linear_scale(0.0), InvalidParameterError);
  CHECK_THROWS_AS(DependentTransform::cubic_perturbation(-0.1), InvalidParameterError);
}

TEST_CASE("independent transforms invert and have constant derivative") {
  std::mt19937_64 rng(9);
  for (const auto& t : {IndependentTransform::scale(2.0), IndependentTransform::scale(-0.3),
                        IndependentTransform::affine(2.0, 1.0), IndependentTransform::affine(-4.0, -2.5)}) {
    for (int k = 0; k < 50; ++k) {
      const Vector v = oracle::random_vector(rng, 3, -10.0, 10.0);
      CHECK((t.forward(t.inverse(v)) - v).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK((t.inverse(t.forward(v)) - v).cwiseAbs().maxCoeff() <= 1e-10);
    }
    CHECK(t.derivative() != 0.0);
    CHECK(t.derivative() * t.inverse_derivative() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(IndependentTransform::scale(0.0), InvalidParameterError);
  CHECK_THROWS_AS(IndependentTransform::affine(0.0, 1.0), InvalidParameterError);
}

TEST_CASE("apply_dependent examples") {
  const auto q = make_quadratic({1.0});
  CHECK(apply_dependent(DependentTransform::linear_scale(3.0), q).residual(scalar(2.0))[0] == 9.0);
  CHECK(apply_dependent(DependentTransform::cubic_perturbation(1.0), q).residual(scalar(2.0))[0] == 30.0);
  for (const auto& t : {DependentTransform::linear_scale(-2.0), DependentTransform::cubic_perturbation(4.0)}) {
    CHECK(apply_dependent(t, q).residual(scalar(1.0))[0] == 0.0);
    CHECK(apply_dependent(t, q).residual(scalar(-1.0))[0] == 0.0);
  }
}

TEST_CASE("transformed problems have correct analytic jacobians") {
  std::mt19937_64 rng(10);
  const auto q = make_quadratic({1.5});
  const auto bvp = make_bvp(8, 1.0, manufactured_sine_forcing(1.0));
  const std::vector<ResidualProblem> problems = {
      apply_dependent(DependentTransform::cubic_perturbation(0.5), q),
      recover_problem_dependent(DependentTransform::cubic_perturbation(0.5), q),
      apply_dependent(DependentTransform::linear_scale(-2.0), bvp),
      recover_problem_dependent(DependentTransform::cubic_perturbation(0.01), bvp),
      recover_problem_independent(IndependentTransform::scale(2.5), q),
      recover_problem_independent(IndependentTransform::affine(-1.5, 0.25), bvp),
      apply_independent(IndependentTransform::affine(0.5, 1.0), bvp),
  };
  for (const ResidualProblem& p : problems) {
    CAPTURE(p.name());
    CHECK(p.has_analytic_jacobian());
    for (int k = 0; k < 20; ++k) {
      const Vector v = oracle::random_vector(rng, p.input_dim(), -1.0, 1.0);
      CHECK(oracle::max_relative_error(p.jacobian(v).values, oracle::fd_jacobian(p, v)) <= 1e-6);
      const Vector y = oracle::random_vector(rng, p.output_dim(), -1.0, 1.0);
      const Vector expected = p.jacobian(v).values.transpose() * y;
      CHECK((p.adjoint(v, y) - expected).cwiseAbs().maxCoeff() <= 1e-9 * (1.0 + expected.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("recover_problem_dependent examples") {
  const auto q = make_quadratic({1.0});
  const auto a = DependentTransform::linear_scale(2.0);
  CHECK(recover_problem_dependent(a, q).residual(scalar(2.0))[0] == 1.5);
  CHECK(recover_problem_dependent(DependentTransform::cubic_perturbation(3.0), q).residual(scalar(1.0))[0] == 0.0);

  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (const auto& t : {a, DependentTransform::cubic_perturbation(1.0)}) {
    const auto round_trip = apply_dependent(t, recover_problem_dependent(t, q));
    for (int k = 0; k < 100; ++k) {
      const Vector v = scalar(d(rng));
      CHECK(std::abs(round_trip.residual(v)[0] - q.residual(v)[0]) <= 1e-10);
    }
  }
}

TEST_CASE("recover_problem_independent examples") {
  const auto q = make_quadratic({1.0});
  const auto g = recover_problem_independent(IndependentTransform::scale(2.0), q);
  CHECK(g.residual(scalar(2.0))[0] == 0.0);
  CHECK(g.residual(scalar(1.0))[0] == -0.75);
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  const auto identity = recover_problem_independent(IndependentTransform::scale(1.0), q);
  for (int k = 0; k < 100; ++k) {
    const Vector v = scalar(d(rng));
    CHECK(std::abs(identity.residual(v)[0] - q.residual(v)[0]) <= 1e-12);
    // G(v) = (lambda / mu^2) v^2 - 1
    CHECK(g.residual(v)[0] == doctest::Approx(v[0] * v[0] / 4.0 - 1.0).epsilon(1e-14));
  }
}

TEST_CASE("pull_back_zero examples") {
  CHECK(pull_back_zero(IndependentTransform::scale(2.0), scalar(2.0))[0] == 1.0);
  CHECK(make_quadratic({1.0}).residual(pull_back_zero(IndependentTransform::scale(2.0), scalar(2.0)))[0] == 0.0);
  CHECK(pull_back_zero(IndependentTransform::scale(1.0), scalar(-0.37))[0] == -0.37);
  CHECK(pull_back_zero(IndependentTransform::affine(2.0, 1.0), scalar(3.0))[0] == 1.0);
}

TEST_CASE("zero correspondence across random transforms") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> lam(0.25, 4.0), mu_mag(0.2, 5.0), sign(-1.0, 1.0), shift(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double lambda = lam(rng);
    const double mu = std::copysign(mu_mag(rng), sign(rng));
    const auto q = make_quadratic({lambda});
    const auto b = k % 2 == 0 ? IndependentTransform::scale(mu) : IndependentTransform::affine(mu, shift(rng));
    const auto g = recover_problem_independent(b, q);
    const Vector u = scalar((sign(rng) < 0 ? -1.0 : 1.0) / std::sqrt(lambda));
    CHECK(std::abs(g.residual(b.forward(u))[0]) <= 1e-10);
    const Vector v_star = b.forward(u);
    CHECK(q.residual(pull_back_zero(b, v_star))[0] == g.residual(v_star)[0]);
  }
}

TEST_CASE("composing scales equals scaling by the product") {
  std::mt19937_64 rng(17);
  const auto bvp = make_bvp(5, 1.0, manufactured_sine_forcing(1.0));
  const auto b1 = IndependentTransform::scale(1.7);
  const auto b2 = IndependentTransform::scale(-0.6);
  const auto twice = recover_problem_independent(b2, recover_problem_independent(b1, bvp));
  const auto once = recover_problem_independent(IndependentTransform::scale(1.7 * -0.6), bvp);
  const auto composed = recover_problem_independent(compose(b2, b1), bvp);
  CHECK(compose(b2, b1).mu() == 1.7 * -0.6);
  for (int k = 0; k < 50; ++k) {
    const Vector v = oracle::random_vector(rng, 5, -2.0, 2.0);
    const Vector expected = once.residual(v);
    const double scale = 1.0 + expected.cwiseAbs().maxCoeff();
    CHECK((twice.residual(v) - expected).cwiseAbs().maxCoeff() <= 1e-12 * scale);
    CHECK((composed.residual(v) - expected).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }
  const auto affine = compose(IndependentTransform::affine(2.0, 1.0), IndependentTransform::affine(3.0, -1.0));
  CHECK(affine.mu() == 6.0);
  CHECK(affine.shift() == -1.0);
}

TEST_CASE("dependent condition ratio") {
  CHECK(dependent_condition_ratio(DependentTransform::linear_scale(3.0), 0.7) == 1.0);
  CHECK(dependent_condition_ratio(DependentTransform::linear_scale(-0.2), 0.7) == doctest::Approx(1.0));
  CHECK(dependent_condition_ratio(DependentTransform::cubic_perturbation(1.0), 1.0) == 0.5);
  CHECK(dependent_condition_ratio(DependentTransform::cubic_perturbation(0.0), 2.0) == 1.0);
  CHECK_THROWS_AS(dependent_condition_ratio(DependentTransform::cubic_perturbation(1.0), 0.0), SingularRatioError);

  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> d(-50.0, 50.0), alpha(0.1, 10.0);
  for (int k = 0; k < 100; ++k) {
    double g = d(rng);
    if (g == 0.0) g = 1.0;
    CHECK(dependent_condition_ratio(DependentTransform::linear_scale(alpha(rng)), g) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("independent condition value is 1/mu") {
  CHECK(independent_condition_value(IndependentTransform::scale(2.0), 0.3) == 0.5);
  CHECK(independent_condition_value(IndependentTransform::scale(1.0), -7.0) == 1.0);
  CHECK(independent_condition_value(IndependentTransform::scale(0.25), 11.0) == 4.0);
  CHECK(independent_condition_value(IndependentTransform::affine(-0.5, 3.0), 0.0) == -2.0);
}

TEST_CASE("transformed quadratic certificate examples") {
  const auto at2 = transformed_certificate_quadratic(1.0, 2.0, 2.0, 0.5);
  CHECK(at2.certificate.lhs == 0.0);
  CHECK(at2.direct_lhs == 0.0);
  CHECK(at2.certificate.passed);
  CHECK(at2.certificate.slack == 1.5);
  CHECK(at2.direct_c == 0.75);
  CHECK(at2.verdicts_agree());

  const auto identity = transformed_certificate_quadratic(1.0, 1.0, 2.0, 0.5);
  const Certificate plain = certify(make_quadratic({1.0}), Ball(2.0, 0.5), closed_form());
  CHECK_FALSE(identity.certificate.passed);
  CHECK(identity.certificate.lhs == plain.lhs);
  CHECK(identity.certificate.rhs == plain.rhs);
  CHECK(identity.certificate.c == plain.c);

  const auto near = transformed_certificate_quadratic(1.0, 1.9, 2.0, 0.5);
  CHECK(near.certificate.passed);
  CHECK(near.certificate.lhs == doctest::Approx(0.39));
  CHECK(near.verdicts_agree());

  CHECK_THROWS_AS(transformed_certificate_quadratic(1.0, 0.0, 2.0, 0.5), InvalidParameterError);
}

TEST_CASE("transformed verdicts agree over the parameter grid") {
  int tuples = 0;
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double mu : {0.5, 1.0, 2.0, 3.0}) {
      for (double x : {-3.0, -1.0, 0.4, 1.2, 2.0}) {
        for (double r : {0.25, 0.5, 1.0}) {
          const auto cert = transformed_certificate_quadratic(lambda, mu, x, r);
          // Direct form on G: |(lambda/mu^2) x^2 - 1| <= r c_{mu,lambda,x,r}
          const double g_lambda = lambda / (mu * mu);
          const bool direct = std::abs(g_lambda * x * x - 1.0) <= r * quadratic_domination_constant(g_lambda, x, r);
          const bool relation = std::abs(lambda * x * x - mu * mu) <= r * quadratic_domination_constant(lambda, x, r);
          CHECK(direct == relation);
          CHECK(cert.certificate.passed == relation);
          CHECK(cert.direct_passed == direct);
          ++tuples;
        }
      }
    }
  }
  CHECK(tuples == 180);
}

TEST_CASE("mu grids") {
  const MuGrid lin = build_mu_grid(linear_grid(0.5, 3.0, 26));
  REQUIRE(lin.values.size() == 26);
  CHECK(lin.values[15] == 2.0);
  CHECK(lin.excluded == 0);

  const MuGrid around_zero = build_mu_grid(linear_grid(-1.0, 1.0, 21));
  CHECK(around_zero.excluded == 1);
  CHECK(around_zero.values.size() == 20);
  CHECK(around_zero.excluded_radius > 0.0);
  for (double mu : around_zero.values) CHECK(mu != 0.0);

  MuGridConfig geo = linear_grid(0.5, 8.0, 5);
  geo.spacing = GridSpacing::geometric;
  const MuGrid g = build_mu_grid(geo);
  REQUIRE(g.values.size() == 5);
  CHECK(g.values[0] == 0.5);
  CHECK(g.values[2] == doctest::Approx(2.0));
  CHECK(g.values[4] == 8.0);

  geo.mirror_negative = true;
  const MuGrid mirrored = build_mu_grid(geo);
  CHECK(mirrored.values.size() == 10);
  CHECK(mirrored.values.front() == -8.0);

  MuGridConfig split = linear_grid(-2.0, 4.0, 10);
  split.spacing = GridSpacing::geometric;
  const MuGrid s = build_mu_grid(split);
  CHECK(s.values.size() == 10);
  CHECK(s.values.front() == -2.0);
  CHECK(s.values.back() == 4.0);
  for (double mu : s.values) CHECK(std::abs(mu) > 0.0);

  CHECK_THROWS_AS(build_mu_grid(linear_grid(3.0, 0.5, 4)), ConfigError);
  CHECK_THROWS_AS(build_mu_grid(linear_grid(0.5, 3.0, 0)), ConfigError);
  CHECK_THROWS_AS(build_mu_grid(linear_grid(0.0, 0.0, 1)), ConfigError);
  CHECK(grid_spacing_from_string("geometric") == GridSpacing::geometric);
  CHECK_THROWS_AS(grid_spacing_from_string("cubic"), ConfigError);
}

TEST_CASE("search_mu finds the latitude of the worked example") {
  const auto q = make_quadratic({1.0});
  const TransformSearchResult r = search_mu(q, Ball(2.0, 0.5), linear_grid(0.5, 3.0, 26), closed_form());
  CHECK(r.any_passed);
  CHECK(r.best_parameter == 2.0);
  CHECK(r.certificate.slack == 1.5);
  CHECK(r.certificate.passed);
  CHECK(r.sweep.size() == 26);
  bool listed = false;
  for (const SweepEntry& e : r.sweep) {
    listed = listed || e.mu == r.best_parameter;
    CHECK(e.certificate.slack <= r.certificate.slack);
  }
  CHECK(listed);
}

TEST_CASE("search_mu cannot help when the ball straddles 0") {
  const auto q = make_quadratic({1.0});
  const TransformSearchResult r = search_mu(q, Ball(0.5, 1.0), linear_grid(0.6, 3.0, 25), closed_form());
  CHECK_FALSE(r.any_passed);
  for (const SweepEntry& e : r.sweep) CHECK(e.certificate.c == 0.0);
  // mu^2 = lambda x^2 gives the boundary tie lhs = 0 = rhs.
  const TransformSearchResult tie = search_mu(q, Ball(0.5, 1.0), linear_grid(0.5, 0.5, 1), closed_form());
  CHECK(tie.any_passed);
}

TEST_CASE("a grid holding only mu = 1 reproduces plain certify") {
  const auto q = make_quadratic({1.3});
  const Ball ball(1.7, 0.4);
  const auto single = linear_grid(1.0, 1.0, 1);
  const Certificate plain_cf = certify(q, ball, closed_form());
  const TransformSearchResult cf = search_mu(q, ball, single, closed_form());
  CHECK(cf.best_parameter == 1.0);
  CHECK(cf.certificate.lhs == plain_cf.lhs);
  CHECK(cf.certificate.rhs == plain_cf.rhs);
  CHECK(cf.certificate.passed == plain_cf.passed);

  const Certificate plain_s = certify(q, ball, sampled());
  const TransformSearchResult s = search_mu(q, ball, single, sampled());
  CHECK(s.certificate.c == plain_s.c);
  CHECK(s.certificate.lhs == plain_s.lhs);
  CHECK(s.certificate.passed == plain_s.passed);
}

TEST_CASE("sampled search on the quadratic also prefers mu = 2") {
  const auto q = make_quadratic({1.0});
  const TransformSearchResult r = search_mu(q, Ball(2.0, 0.5), linear_grid(0.5, 3.0, 26), sampled(1.0));
  CHECK(r.any_passed);
  CHECK(r.best_parameter == 2.0);
  CHECK(r.certificate.lhs == 0.0);
  CHECK(r.certificate.advisory());
}

TEST_CASE("search tie-breaks by distance from 1, then by smaller mu") {
  // x = 0: c = 0 and lhs = mu^2, so every entry fails and the slack -mu^2 peaks at the smallest |mu|.
  const auto q = make_quadratic({1.0});
  MuGridConfig g = linear_grid(-2.0, 2.0, 9);
  const TransformSearchResult r = search_mu(q, Ball(0.0, 1.0), g, closed_form());
  CHECK_FALSE(r.any_passed);
  CHECK(std::abs(r.best_parameter) == 0.5);
  CHECK(r.best_parameter == 0.5);  // |0.5 - 1| < |-0.5 - 1|
  CHECK(r.excluded == 1);
}

TEST_CASE("search refuses the closed form for other problems") {
  const auto bvp = make_bvp(4, 0.0, [](double) { return 1.0; });
  CHECK_THROWS_AS(search_mu(bvp, Ball(Vector::Zero(4), 1.0), linear_grid(0.5, 2.0, 3), closed_form()),
                  InvalidMethodError);
}

TEST_CASE("linear dependent scaling leaves sampled verdicts unchanged") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> lam(0.25, 4.0), cx(-3.0, 3.0), rad(0.1, 1.0);
  for (int k = 0; k < 10; ++k) {
    const auto q = make_quadratic({lam(rng)});
    const Ball ball(cx(rng), rad(rng));
    const Certificate base = certify(q, ball, sampled());
    for (double alpha : {-2.0, 0.5, 3.0}) {
      const Certificate scaled = certify(apply_dependent(DependentTransform::linear_scale(alpha), q), ball, sampled());
      CHECK(scaled.passed == base.passed);
      CHECK(scaled.lhs == doctest::Approx(std::abs(alpha) * base.lhs));
      CHECK(scaled.c == doctest::Approx(std::abs(alpha) * base.c));
    }
  }
}
