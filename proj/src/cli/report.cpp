#include "zerocert/cli/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace zerocert::cli {

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json to_json(const Ball& ball) { return {{"center", to_json(ball.center)}, {"radius", ball.radius}}; }

Json to_json(const Certificate& cert) {
  return {{"ball", to_json(cert.ball)},
          {"c", cert.c},
          {"lhs", cert.lhs},
          {"rhs", cert.rhs},
          {"slack", cert.slack},
          {"passed", cert.passed},
          {"method", std::string(to_string(cert.method))},
          {"sample_count", cert.sample_count},
          {"advisory", cert.advisory()}};
}

Json to_json(const TransformSearchResult& result) {
  Json sweep = Json::array();
  for (const SweepEntry& e : result.sweep) {
    sweep.push_back({{"mu", e.mu},
                     {"c", e.certificate.c},
                     {"lhs", e.certificate.lhs},
                     {"rhs", e.certificate.rhs},
                     {"slack", e.certificate.slack},
                     {"passed", e.certificate.passed}});
  }
  return {{"best_mu", result.best_parameter},
          {"any_passed", result.any_passed},
          {"certificate", to_json(result.certificate)},
          {"excluded_near_zero", result.excluded},
          {"excluded_radius", result.excluded_radius},
          {"sweep", sweep}};
}

Json to_json(const DescentResult& result) {
  return {{"u", to_json(result.u)},
          {"residual_norm", result.residual_norm},
          {"iterations", result.iterations},
          {"in_ball", result.in_ball},
          {"status", std::string(to_string(result.status))}};
}

Json gradient_check_summary(const GradientCheckReport& report) {
  return {{"point", to_json(report.point)},
          {"max_relative_error", report.max_relative_error},
          {"analytic_gradient_norm", report.analytic_gradient.norm()},
          {"numeric_gradient_norm", report.numeric_gradient.norm()}};
}

std::string verdict_line(const Certificate& cert) {
  return std::string(cert.passed ? "PASS" : "FAIL") + " lhs=" + format_number(cert.lhs) +
         " rhs=" + format_number(cert.rhs) + " slack=" + format_number(cert.slack) +
         " c=" + format_number(cert.c) + " method=" + std::string(to_string(cert.method));
}

void write_sweep_csv(std::ostream& out, const TransformSearchResult& result) {
  out << "mu,c,lhs,rhs,slack,passed\n";
  for (const SweepEntry& e : result.sweep) {
    out << format_number(e.mu) << ',' << format_number(e.certificate.c) << ','
        << format_number(e.certificate.lhs) << ',' << format_number(e.certificate.rhs) << ','
        << format_number(e.certificate.slack) << ',' << (e.certificate.passed ? 1 : 0) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const DescentResult& result) {
  out << "k,phi,grad_norm,step\n";
  for (const TraceRow& row : result.trace) {
    out << row.iteration << ',' << format_number(row.phi) << ',' << format_number(row.gradient_norm)
        << ',' << format_number(row.step) << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace zerocert::cli
