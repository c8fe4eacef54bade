#include "zerocert/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <vector>

#include "zerocert/certificate.hpp"
#include "zerocert/functional.hpp"
#include "zerocert/kernels.hpp"
#include "zerocert/problems.hpp"
#include "zerocert/transforms.hpp"

namespace zerocert {

namespace {

constexpr double kLambdas[] = {0.5, 1.0, 2.0};
constexpr double kMus[] = {0.5, 1.0, 2.0, 3.0};
constexpr double kCenters[] = {-3.0, -1.0, 0.4, 1.2, 2.0};
constexpr double kRadii[] = {0.25, 0.5, 1.0};

double brute_force_constant(double lambda, double x, double r, int points) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double v = (x - r) + 2.0 * r * k / (points - 1);
    best = std::min(best, 2.0 * std::abs(lambda * v));
  }
  return best;
}

SelftestSuite closed_form_suite(const SelftestOptions& options) {
  SelftestSuite suite{"closed_form_constant"};
  constexpr int kPoints = 10001;
  for (double lambda : kLambdas) {
    for (double x : kCenters) {
      for (double r : kRadii) {
        const double closed = options.closed_form_corruption * quadratic_domination_constant(lambda, x, r);
        const double brute = brute_force_constant(lambda, x, r, kPoints);
        const bool straddles = x - r <= 0.0 && 0.0 <= x + r;
        const bool ok = straddles ? closed == 0.0 && brute <= 2.0 * std::abs(lambda) * 2.0 * r / (kPoints - 1)
                                  : std::abs(closed - brute) <= 1e-4;
        ++suite.total;
        suite.passed += ok ? 1 : 0;
      }
    }
  }
  return suite;
}

SelftestSuite sampled_suite(const SelftestOptions& options) {
  SelftestSuite suite{"sampled_vs_closed_form"};
  SamplingConfig sampling;
  sampling.safety = 1.0;
  sampling.samples_per_axis = 1001;
  for (double lambda : kLambdas) {
    const ResidualProblem problem = make_quadratic({lambda});
    for (double x : kCenters) {
      for (double r : kRadii) {
        const double closed = options.closed_form_corruption * quadratic_domination_constant(lambda, x, r);
        const double sampled = estimate_domination_constant(problem, Ball(x, r), sampling).c;
        const bool ok = closed > 0.0 ? std::abs(sampled - closed) <= 0.01 * closed : sampled <= 0.01;
        ++suite.total;
        suite.passed += ok ? 1 : 0;
      }
    }
  }
  return suite;
}

SelftestSuite equivalence_suite() {
  SelftestSuite suite{"transformed_verdict_equivalence"};
  for (double lambda : kLambdas) {
    for (double mu : kMus) {
      for (double x : kCenters) {
        for (double r : kRadii) {
          const auto cert = transformed_certificate_quadratic(lambda, mu, x, r);
          ++suite.total;
          suite.passed += cert.verdicts_agree() ? 1 : 0;
        }
      }
    }
  }
  return suite;
}

SelftestSuite gradient_suite() {
  SelftestSuite suite{"gradient_checks"};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coordinate(-2.0, 2.0);
  std::vector<ResidualProblem> problems = {make_quadratic({1.0}), make_quadratic({2.0})};
  for (double gamma : {0.0, 1.0}) {
    for (int n : {16, 64}) problems.push_back(make_bvp(n, gamma, manufactured_sine_forcing(gamma)));
  }
  for (const ResidualProblem& problem : problems) {
    for (int k = 0; k < 10; ++k) {
      Vector v(problem.input_dim());
      for (auto& x : v) x = coordinate(rng);
      ++suite.total;
      suite.passed += check_gradient(problem, v).max_relative_error <= 1e-6 ? 1 : 0;
    }
  }
  return suite;
}

SelftestSuite kernel_suite() {
  SelftestSuite suite{"kernel_equivalence"};
  const kernels::KernelTable& ref = kernels::scalar_table();
  const kernels::KernelTable& act = kernels::active();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  for (std::size_t n : {1u, 3u, 7u, 16u, 61u, 64u}) {
    std::vector<double> x(n), y(n), f(n), a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = value(rng);
      y[i] = value(rng);
      f[i] = value(rng);
    }
    const double d_ref = ref.dot(x.data(), y.data(), n);
    const double d_act = act.dot(x.data(), y.data(), n);
    ++suite.total;
    suite.passed += std::abs(d_ref - d_act) <= 1e-13 * (1.0 + std::abs(d_ref)) ? 1 : 0;

    ref.bvp_residual(x.data(), f.data(), n, 4225.0, 1.0, a.data());
    act.bvp_residual(x.data(), f.data(), n, 4225.0, 1.0, b.data());
    ++suite.total;
    suite.passed += a == b ? 1 : 0;

    ref.bvp_apply_jacobian(x.data(), y.data(), n, 4225.0, 1.0, a.data());
    act.bvp_apply_jacobian(x.data(), y.data(), n, 4225.0, 1.0, b.data());
    ++suite.total;
    suite.passed += a == b ? 1 : 0;
  }
  return suite;
}

}  // namespace

bool SelftestReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SelftestSuite& s) { return s.ok(); });
}

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  report.suites.push_back(closed_form_suite(options));
  report.suites.push_back(sampled_suite(options));
  report.suites.push_back(equivalence_suite());
  report.suites.push_back(gradient_suite());
  report.suites.push_back(kernel_suite());
  return report;
}

void print_selftest(std::ostream& out, const SelftestReport& report) {
  char line[128];
  std::snprintf(line, sizeof line, "%-34s %8s %8s  %s\n", "suite", "passed", "total", "status");
  out << line;
  for (const SelftestSuite& s : report.suites) {
    std::snprintf(line, sizeof line, "%-34s %8d %8d  %s\n", s.name.c_str(), s.passed, s.total,
                  s.ok() ? "PASS" : "FAIL");
    out << line;
  }
  out << (report.all_passed() ? "selftest: PASS" : "selftest: FAIL") << " (kernels: "
      << kernels::active().name << ")\n";
}

}  // namespace zerocert
