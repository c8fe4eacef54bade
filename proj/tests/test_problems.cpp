#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "support/oracles.hpp"
#include "zerocert/errors.hpp"
#include "zerocert/problems.hpp"

using namespace zerocert;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

std::vector<ResidualProblem> builtin_problems() {
  std::vector<ResidualProblem> out = {make_quadratic({0.5}), make_quadratic({1.0}), make_quadratic({2.0}),
                                      make_quadratic({4.0})};
  for (double gamma : {0.0, 1.0}) {
    for (int n : {2, 16, 64}) out.push_back(make_bvp(n, gamma, manufactured_sine_forcing(gamma)));
  }
  return out;
}

}  // namespace

TEST_CASE("quadratic residual examples") {
  CHECK(eval_residual(make_quadratic({1.0}), vec({2.0}))[0] == 3.0);
  CHECK(eval_residual(make_quadratic({1.0}), vec({1.0}))[0] == 0.0);
  CHECK(eval_residual(make_quadratic({2.0}), vec({0.0}))[0] == -1.0);
}

TEST_CASE("quadratic jacobian examples") {
  const auto p = make_quadratic({1.0});
  const JacobianResult at2 = eval_jacobian(p, vec({2.0}));
  CHECK(at2.values(0, 0) == 4.0);
  CHECK_FALSE(at2.approximate);
  CHECK(eval_jacobian(p, vec({0.0})).values(0, 0) == 0.0);
}

TEST_CASE("quadratic zeros sit at +-1/sqrt(lambda)") {
  for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
    const auto p = make_quadratic({lambda});
    const double u = 1.0 / std::sqrt(lambda);
    CHECK(std::abs(p.residual(vec({u}))[0]) <= 1e-12);
    CHECK(std::abs(p.residual(vec({-u}))[0]) <= 1e-12);
  }
  CHECK(make_quadratic({4.0}).residual(vec({0.5}))[0] == 0.0);
  CHECK(make_quadratic({4.0}).residual(vec({-0.5}))[0] == 0.0);
}

TEST_CASE("lambda = 0 gives the constant map -1") {
  const auto p = make_quadratic({0.0});
  for (double v : {-5.0, 0.0, 0.3, 100.0}) CHECK(p.residual(vec({v}))[0] == -1.0);
}

TEST_CASE("non-finite lambda is rejected") {
  CHECK_THROWS_AS(make_quadratic({std::nan("")}), std::invalid_argument);
}

TEST_CASE("dimension mismatch raises a shape error") {
  const auto q = make_quadratic({1.0});
  CHECK_THROWS_AS(eval_residual(q, vec({1.0, 2.0})), ShapeError);
  CHECK_THROWS_AS(eval_jacobian(q, Vector(0)), ShapeError);
  const auto b = make_bvp(4, 0.0, [](double) { return 0.0; });
  CHECK_THROWS_AS(eval_residual(b, vec({1.0})), ShapeError);
}

TEST_CASE("bvp configuration checks") {
  CHECK_THROWS_AS(make_bvp(1, 0.0, [](double) { return 0.0; }), ConfigError);
  CHECK_THROWS_AS(make_bvp(0, 0.0, [](double) { return 0.0; }), ConfigError);
  CHECK_NOTHROW(make_bvp(2, 0.0, [](double) { return 0.0; }));
}

TEST_CASE("homogeneous bvp has the zero solution") {
  const auto p = make_bvp(10, 0.0, [](double) { return 0.0; });
  CHECK(p.residual(Vector::Zero(10)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bvp residual on a tiny grid by hand") {
  // N = 2: h = 1/3, h^-2 = 9, nodes 1/3, 2/3.
  const auto p = make_bvp(2, 2.0, [](double t) { return t; });
  const Vector r = p.residual(vec({1.0, -1.0}));
  CHECK(r[0] == doctest::Approx((2.0 * 1 - 0 + 1) * 9.0 + 2.0 * 1.0 - 1.0 / 3.0));
  CHECK(r[1] == doctest::Approx((-2.0 - 1.0 - 0) * 9.0 + 2.0 * -1.0 - 2.0 / 3.0));
}

TEST_CASE("manufactured sine solutions leave only truncation error") {
  for (double gamma : {0.0, 1.0}) {
    CAPTURE(gamma);
    const int n = 64;
    const auto forcing = manufactured_sine_forcing(gamma);
    const auto p = make_bvp(n, gamma, forcing);
    const Vector t = bvp_nodes(n);
    Vector u(n), f(n);
    for (int i = 0; i < n; ++i) {
      u[i] = std::sin(std::numbers::pi * t[i]);
      f[i] = forcing(t[i]);
    }
    CHECK(p.residual(u).norm() <= 1e-2 * f.norm());
  }
}

TEST_CASE("bvp nodes are i h") {
  const Vector t = bvp_nodes(3);
  CHECK(t[0] == 0.25);
  CHECK(t[1] == 0.5);
  CHECK(t[2] == 0.75);
}

TEST_CASE("analytic jacobians match central differences at random points") {
  std::mt19937_64 rng(1234);
  for (const ResidualProblem& p : builtin_problems()) {
    CAPTURE(p.name());
    CAPTURE(p.input_dim());
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const Vector v = oracle::random_vector(rng, p.input_dim(), -2.0, 2.0);
      worst = std::max(worst, oracle::max_relative_error(p.jacobian(v).values, oracle::fd_jacobian(p, v)));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("adjoint equals the transposed jacobian action") {
  std::mt19937_64 rng(5);
  const auto p = make_bvp(17, 1.0, manufactured_sine_forcing(1.0));
  const Vector v = oracle::random_vector(rng, 17, -2.0, 2.0);
  const Vector y = oracle::random_vector(rng, 17, -1.0, 1.0);
  const Vector expected = p.jacobian(v).values.transpose() * y;
  CHECK((p.adjoint(v, y) - expected).cwiseAbs().maxCoeff() <= 1e-9 * expected.cwiseAbs().maxCoeff());
}

TEST_CASE("problems without an analytic jacobian fall back to flagged finite differences") {
  ResidualProblem::Definition def;
  def.name = "circle";
  def.input_dim = 2;
  def.output_dim = 1;
  def.residual = [](const Vector& v) { return vec({v.squaredNorm() - 1.0}); };
  const ResidualProblem p(def);
  CHECK_FALSE(p.has_analytic_jacobian());
  const JacobianResult j = p.jacobian(vec({0.5, -1.5}));
  CHECK(j.approximate);
  CHECK(j.values(0, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(j.values(0, 1) == doctest::Approx(-3.0).epsilon(1e-8));
}

TEST_CASE("quadrature weights enter the codomain norm") {
  BvpOptions opts;
  opts.grid_points = 3;
  opts.quadrature_weights = true;
  const auto p = make_bvp(opts);
  REQUIRE(p.weights());
  const Vector y = vec({1.0, 2.0, 2.0});
  CHECK(p.norm(y) == doctest::Approx(std::sqrt(0.25 * 9.0)));
  CHECK(make_bvp(3, 0.0, [](double) { return 0.0; }).norm(y) == doctest::Approx(3.0));
}

TEST_CASE("problems are safe to evaluate from several threads") {
  const auto p = make_bvp(64, 1.0, manufactured_sine_forcing(1.0));
  const Vector v = Vector::LinSpaced(64, -1.0, 1.0);
  const Vector expected = p.residual(v);
  std::vector<int> mismatches(4, 0);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < 4; ++w) {
      pool.emplace_back([&, w] {
        for (int k = 0; k < 200; ++k) mismatches[w] += (p.residual(v) != expected) ? 1 : 0;
      });
    }
  }
  for (int m : mismatches) CHECK(m == 0);
}
