#include "zerocert/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string_view>

#include "zerocert/errors.hpp"

namespace zerocert::cli {

namespace {

// Typed access to one JSON object with dotted key paths in every error.
class Section {
 public:
  Section(const Json* node, std::string path) : node_(node), path_(std::move(path)) {
    if (node_ != nullptr && !node_->is_object()) throw ConfigError(path_, "expected an object");
  }

  bool present() const { return node_ != nullptr; }
  bool has(const char* key) const { return node_ != nullptr && node_->contains(key); }
  std::string key(const char* name) const { return path_.empty() ? name : path_ + "." + name; }

  Section child(const char* name) const {
    if (!has(name)) return Section(nullptr, key(name));
    return Section(&node_->at(name), key(name));
  }

  const Json& raw(const char* name) const {
    if (!has(name)) throw ConfigError(key(name), "required key is missing");
    return node_->at(name);
  }

  double number(const char* name, std::optional<double> fallback = std::nullopt) const {
    if (!has(name)) {
      if (fallback) return *fallback;
      throw ConfigError(key(name), "required key is missing");
    }
    const Json& v = node_->at(name);
    if (!v.is_number()) throw ConfigError(key(name), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(key(name), "expected a finite number");
    return d;
  }

  std::int64_t integer(const char* name, std::int64_t fallback) const {
    if (!has(name)) return fallback;
    const Json& v = node_->at(name);
    if (!v.is_number_integer()) throw ConfigError(key(name), "expected an integer");
    return v.get<std::int64_t>();
  }

  int small_integer(const char* name, int fallback) const {
    const std::int64_t v = integer(name, fallback);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
      throw ConfigError(key(name), "integer out of range");
    }
    return static_cast<int>(v);
  }

  bool boolean(const char* name, bool fallback) const {
    if (!has(name)) return fallback;
    const Json& v = node_->at(name);
    if (!v.is_boolean()) throw ConfigError(key(name), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const char* name, std::optional<std::string> fallback = std::nullopt) const {
    if (!has(name)) {
      if (fallback) return *fallback;
      throw ConfigError(key(name), "required key is missing");
    }
    const Json& v = node_->at(name);
    if (!v.is_string()) throw ConfigError(key(name), "expected a string");
    return v.get<std::string>();
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    if (node_ == nullptr) return;
    for (const auto& item : node_->items()) {
      bool known = false;
      for (std::string_view k : keys) known = known || item.key() == k;
      if (!known) throw ConfigError(key(item.key().c_str()), "unknown key");
    }
  }

 private:
  const Json* node_;
  std::string path_;
};

ProblemConfig parse_problem(const Section& s) {
  if (!s.present()) throw ConfigError("problem", "required section is missing");
  ProblemConfig p;
  p.name = s.string("name");
  if (p.name == "quadratic") {
    s.allow_only({"name", "lambda"});
    p.lambda = s.number("lambda", 1.0);
  } else if (p.name == "bvp") {
    s.allow_only({"name", "grid_points", "gamma", "forcing", "quadrature_weights"});
    p.grid_points = s.small_integer("grid_points", 64);
    if (p.grid_points < 2) throw ConfigError(s.key("grid_points"), "must be at least 2");
    p.gamma = s.number("gamma", 0.0);
    p.quadrature_weights = s.boolean("quadrature_weights", false);
    const Section f = s.child("forcing");
    if (f.present()) {
      f.allow_only({"type", "value"});
      p.forcing.type = f.string("type", "zero");
      if (p.forcing.type != "zero" && p.forcing.type != "constant" && p.forcing.type != "manufactured_sine") {
        throw ConfigError(f.key("type"), "expected 'zero', 'constant' or 'manufactured_sine'");
      }
      p.forcing.value = f.number("value", 0.0);
    }
  } else {
    throw ConfigError(s.key("name"), "unknown problem '" + p.name + "' (expected 'quadratic' or 'bvp')");
  }
  return p;
}

Ball parse_ball(const Section& s, Eigen::Index dimension) {
  if (!s.present()) throw ConfigError("ball", "required section is missing");
  s.allow_only({"center", "radius"});
  const double radius = s.number("radius");
  if (!(radius > 0.0)) throw ConfigError(s.key("radius"), "must be positive");
  const Json& c = s.raw("center");
  Vector center;
  if (c.is_number()) {
    center = Vector::Constant(dimension, c.get<double>());
  } else if (c.is_array()) {
    if (static_cast<Eigen::Index>(c.size()) != dimension) {
      throw ConfigError(s.key("center"), "expected " + std::to_string(dimension) + " entries, got " +
                                             std::to_string(c.size()));
    }
    center.resize(dimension);
    for (Eigen::Index i = 0; i < dimension; ++i) {
      const Json& e = c[static_cast<std::size_t>(i)];
      if (!e.is_number()) throw ConfigError(s.key("center"), "entries must be numbers");
      center[i] = e.get<double>();
    }
  } else {
    throw ConfigError(s.key("center"), "expected a number or a list of numbers");
  }
  if (!center.allFinite()) throw ConfigError(s.key("center"), "entries must be finite");
  return Ball(std::move(center), radius);
}

CertifyConfig parse_method(const Section& s, const ProblemConfig& problem) {
  CertifyConfig c;
  c.method = problem.name == "quadratic" ? CertificateMethod::closed_form_quadratic : CertificateMethod::sampled;
  if (!s.present()) return c;
  s.allow_only({"type", "samples_per_axis", "residual_floor", "safety", "seed", "max_points"});
  if (s.has("type")) {
    const std::string type = s.string("type");
    if (type == "closed_form_quadratic") {
      c.method = CertificateMethod::closed_form_quadratic;
    } else if (type == "sampled") {
      c.method = CertificateMethod::sampled;
    } else {
      throw ConfigError(s.key("type"), "expected 'closed_form_quadratic' or 'sampled'");
    }
  }
  if (c.method == CertificateMethod::closed_form_quadratic && problem.name != "quadratic") {
    throw ConfigError(s.key("type"), "closed_form_quadratic requires the quadratic problem");
  }
  SamplingConfig& sc = c.sampling;
  sc.samples_per_axis = s.small_integer("samples_per_axis", sc.samples_per_axis);
  sc.residual_floor = s.number("residual_floor", sc.residual_floor);
  sc.safety = s.number("safety", sc.safety);
  const std::int64_t seed = s.integer("seed", static_cast<std::int64_t>(sc.seed));
  if (seed < 0) throw ConfigError(s.key("seed"), "must be non-negative");
  sc.seed = static_cast<std::uint64_t>(seed);
  sc.max_points = s.integer("max_points", sc.max_points);
  sc.validate();
  return c;
}

std::optional<TransformConfig> parse_transform(const Section& s) {
  if (!s.present()) return std::nullopt;
  s.allow_only({"family", "mu_min", "mu_max", "grid_size", "spacing", "mirror_negative", "zero_exclusion"});
  TransformConfig t;
  t.family = s.string("family", "scale");
  if (t.family != "scale") throw ConfigError(s.key("family"), "only the 'scale' family can be searched");
  MuGridConfig& g = t.grid;
  g.lower = s.number("mu_min", g.lower);
  g.upper = s.number("mu_max", g.upper);
  g.size = s.small_integer("grid_size", g.size);
  if (s.has("spacing")) g.spacing = grid_spacing_from_string(s.string("spacing"));
  g.mirror_negative = s.boolean("mirror_negative", g.mirror_negative);
  g.zero_exclusion = s.number("zero_exclusion", g.zero_exclusion);
  if (g.lower > g.upper) throw ConfigError(s.key("mu_min"), "must not exceed transform.mu_max");
  if (g.size < 1) throw ConfigError(s.key("grid_size"), "must be at least 1");
  if (!(g.zero_exclusion > 0.0)) throw ConfigError(s.key("zero_exclusion"), "must be positive");
  return t;
}

DescentConfig parse_descent(const Section& s) {
  DescentConfig d;
  if (!s.present()) return d;
  s.allow_only({"residual_tolerance", "max_iterations", "initial_step", "backtrack_factor",
                "sufficient_decrease", "ball_policy", "direction"});
  d.residual_tolerance = s.number("residual_tolerance", d.residual_tolerance);
  d.max_iterations = s.small_integer("max_iterations", d.max_iterations);
  d.initial_step = s.number("initial_step", d.initial_step);
  d.backtrack_factor = s.number("backtrack_factor", d.backtrack_factor);
  d.sufficient_decrease = s.number("sufficient_decrease", d.sufficient_decrease);
  if (s.has("ball_policy")) d.ball_policy = ball_policy_from_string(s.string("ball_policy"));
  if (s.has("direction")) d.direction = descent_direction_from_string(s.string("direction"));
  d.validate();
  return d;
}

OutputConfig parse_output(const Section& s) {
  OutputConfig o;
  if (!s.present()) return o;
  s.allow_only({"report", "sweep_csv", "trace_csv"});
  o.report = s.string("report", "");
  o.sweep_csv = s.string("sweep_csv", "");
  o.trace_csv = s.string("trace_csv", "");
  return o;
}

Eigen::Index problem_dimension(const ProblemConfig& p) { return p.name == "bvp" ? p.grid_points : 1; }

}  // namespace

RunConfig parse_run_config(const Json& document) {
  const Section root(&document, "");
  root.allow_only({"problem", "ball", "method", "transform", "descent", "output"});
  RunConfig config;
  config.problem = parse_problem(root.child("problem"));
  config.ball = parse_ball(root.child("ball"), problem_dimension(config.problem));
  config.certify = parse_method(root.child("method"), config.problem);
  config.transform = parse_transform(root.child("transform"));
  config.descent = parse_descent(root.child("descent"));
  config.output = parse_output(root.child("output"));
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path + "'");
  Json document;
  try {
    document = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("--config", std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(document);
}

Json to_json(const RunConfig& config) {
  Json problem = {{"name", config.problem.name}};
  if (config.problem.name == "quadratic") {
    problem["lambda"] = config.problem.lambda;
  } else {
    problem["grid_points"] = config.problem.grid_points;
    problem["gamma"] = config.problem.gamma;
    problem["forcing"] = {{"type", config.problem.forcing.type}, {"value", config.problem.forcing.value}};
    problem["quadrature_weights"] = config.problem.quadrature_weights;
  }
  Json center = Json::array();
  for (double v : config.ball.center) center.push_back(v);
  const SamplingConfig& s = config.certify.sampling;
  Json doc = {
      {"problem", problem},
      {"ball", {{"center", center}, {"radius", config.ball.radius}}},
      {"method",
       {{"type", std::string(to_string(config.certify.method))},
        {"samples_per_axis", s.samples_per_axis},
        {"residual_floor", s.residual_floor},
        {"safety", s.safety},
        {"seed", s.seed},
        {"max_points", s.max_points}}},
  };
  if (config.transform) {
    const MuGridConfig& g = config.transform->grid;
    doc["transform"] = {{"family", config.transform->family},
                        {"mu_min", g.lower},
                        {"mu_max", g.upper},
                        {"grid_size", g.size},
                        {"spacing", std::string(to_string(g.spacing))},
                        {"mirror_negative", g.mirror_negative},
                        {"zero_exclusion", g.zero_exclusion}};
  }
  const DescentConfig& d = config.descent;
  doc["descent"] = {{"residual_tolerance", d.residual_tolerance},
                    {"max_iterations", d.max_iterations},
                    {"initial_step", d.initial_step},
                    {"backtrack_factor", d.backtrack_factor},
                    {"sufficient_decrease", d.sufficient_decrease},
                    {"ball_policy", std::string(to_string(d.ball_policy))},
                    {"direction", std::string(to_string(d.direction))}};
  doc["output"] = {{"report", config.output.report},
                   {"sweep_csv", config.output.sweep_csv},
                   {"trace_csv", config.output.trace_csv}};
  return doc;
}

ResidualProblem build_problem(const ProblemConfig& config) {
  if (config.name == "quadratic") return make_quadratic({config.lambda});
  if (config.name == "bvp") {
    BvpOptions options;
    options.grid_points = config.grid_points;
    options.nonlinearity = config.gamma;
    options.quadrature_weights = config.quadrature_weights;
    if (config.forcing.type == "manufactured_sine") {
      options.forcing = manufactured_sine_forcing(config.gamma);
    } else {
      const double level = config.forcing.type == "constant" ? config.forcing.value : 0.0;
      options.forcing = [level](double) { return level; };
    }
    return make_bvp(options);
  }
  throw ConfigError("problem.name", "unknown problem '" + config.name + "'");
}

}  // namespace zerocert::cli
