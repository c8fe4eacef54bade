#pragma once

// Run configuration: one JSON file describes one run.
//
//   {
//     "problem":   {"name": "quadratic", "lambda": 1.0}
//                | {"name": "bvp", "grid_points": 64, "gamma": 1.0,
//                   "forcing": {"type": "manufactured_sine"}, "quadrature_weights": false},
//     "ball":      {"center": [2.0] | 0.0, "radius": 0.5},
//     "method":    {"type": "closed_form_quadratic" | "sampled", "samples_per_axis": 1001,
//                   "residual_floor": 1e-12, "safety": 0.9, "seed": 42, "max_points": 1000000},
//     "transform": {"family": "scale", "mu_min": 0.5, "mu_max": 3.0, "grid_size": 26,
//                   "spacing": "linear", "mirror_negative": false, "zero_exclusion": 1e-6},
//     "descent":   {"residual_tolerance": 1e-10, "max_iterations": 10000, "initial_step": 1.0,
//                   "backtrack_factor": 0.5, "sufficient_decrease": 1e-4,
//                   "ball_policy": "clip_to_ball", "direction": "steepest"},
//     "output":    {"report": "", "sweep_csv": "", "trace_csv": ""}
//   }
//
// Only "problem" and "ball" are required. The method defaults to the closed
// form for the quadratic and to sampling otherwise. Unknown keys are errors.

#include <json.hpp>

#include <optional>
#include <string>

#include "zerocert/certificate.hpp"
#include "zerocert/descent.hpp"
#include "zerocert/problems.hpp"
#include "zerocert/transforms.hpp"

namespace zerocert::cli {

using Json = nlohmann::ordered_json;

struct ForcingConfig {
  std::string type = "zero";  // zero | constant | manufactured_sine
  double value = 0.0;         // constant forcing level
};

struct ProblemConfig {
  std::string name;
  double lambda = 1.0;
  int grid_points = 64;
  double gamma = 0.0;
  ForcingConfig forcing;
  bool quadrature_weights = false;
};

struct TransformConfig {
  std::string family = "scale";
  MuGridConfig grid;
};

struct OutputConfig {
  std::string report;
  std::string sweep_csv;
  std::string trace_csv;
};

struct RunConfig {
  ProblemConfig problem;
  Ball ball;
  CertifyConfig certify;
  std::optional<TransformConfig> transform;
  DescentConfig descent;
  OutputConfig output;
};

// Throws ConfigError naming the offending key.
RunConfig parse_run_config(const Json& document);
RunConfig load_run_config(const std::string& path);

// Normalized configuration with every default filled in.
Json to_json(const RunConfig& config);

ResidualProblem build_problem(const ProblemConfig& config);

}  // namespace zerocert::cli
