#pragma once

#include <iosfwd>
#include <string>

#include "zerocert/cli/config.hpp"
#include "zerocert/descent.hpp"
#include "zerocert/functional.hpp"
#include "zerocert/transforms.hpp"

namespace zerocert::cli {

// printf("%.17g"), round-trip exact.
std::string format_number(double value);

Json to_json(const Vector& v);
Json to_json(const Ball& ball);
Json to_json(const Certificate& cert);
Json to_json(const TransformSearchResult& result);
Json to_json(const DescentResult& result);
Json gradient_check_summary(const GradientCheckReport& report);

// PASS|FAIL lhs=<v> rhs=<v> slack=<v> c=<v> method=<m>
std::string verdict_line(const Certificate& cert);

// Header "mu,c,lhs,rhs,slack,passed", one row per grid value.
void write_sweep_csv(std::ostream& out, const TransformSearchResult& result);
// Header "k,phi,grad_norm,step".
void write_trace_csv(std::ostream& out, const DescentResult& result);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace zerocert::cli
