// Copyright 2026 The rieszlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rieszlab/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace rieszlab {

using json = nlohmann::ordered_json;

ConfigError::ConfigError(std::string field, std::size_t line,
                         const std::string& message)
    : std::invalid_argument(
          (line ? "line " + std::to_string(line) + ", " : std::string()) +
          (field.empty() ? std::string("config") : field) + ": " + message),
      field_(std::move(field)),
      line_(line) {}

namespace {

std::size_t line_at(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < pos; ++i) line += text[i] == '\n';
  return line;
}

// Approximate source line of a JSON pointer: each key is searched for after
// the position of its parent.
std::size_t line_of(const std::string* text, const std::string& pointer) {
  if (text == nullptr || text->empty()) return 0;
  std::size_t pos = 0;
  std::istringstream is(pointer);
  std::string seg;
  bool found = false;
  while (std::getline(is, seg, '/')) {
    if (seg.empty() || std::isdigit(static_cast<unsigned char>(seg[0]))) continue;
    const std::size_t at = text->find('"' + seg + '"', pos);
    if (at == std::string::npos) break;
    pos = at;
    found = true;
  }
  return found ? line_at(*text, pos) : 0;
}

class Obj {
 public:
  Obj(const json& j, std::string path, json* out, const std::string* text)
      : j_(j), path_(std::move(path)), out_(out), text_(text) {
    if (!j_.is_object()) fail(path_, "expected an object");
    *out_ = json::object();
  }

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ConfigError(field.empty() ? "/" : field, line_of(text_, field), msg);
  }
  std::string at(const std::string& key) const { return path_ + "/" + key; }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  double number(const std::string& key, std::optional<double> def) {
    if (!has(key)) return put(key, require(key, def));
    const json& v = j_[key];
    if (!v.is_number()) fail(at(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(at(key), "expected a finite number");
    return put(key, x);
  }

  double positive(const std::string& key, std::optional<double> def) {
    const double x = number(key, def);
    if (!(x > 0.0)) fail(at(key), "must be positive");
    return x;
  }

  std::int64_t integer(const std::string& key, std::optional<std::int64_t> def) {
    if (!has(key)) {
      if (!def) fail(at(key), "required");
      (*out_)[key] = *def;
      return *def;
    }
    const json& v = j_[key];
    if (!v.is_number_integer()) fail(at(key), "expected an integer");
    const std::int64_t x = v.get<std::int64_t>();
    (*out_)[key] = x;
    return x;
  }

  std::uint64_t count(const std::string& key, std::uint64_t def,
                      std::uint64_t min = 1) {
    if (!has(key)) {
      (*out_)[key] = def;
      return def;
    }
    const json& v = j_[key];
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      fail(at(key), "expected a nonnegative integer");
    }
    const std::uint64_t x = v.get<std::uint64_t>();
    if (x < min) fail(at(key), "must be at least " + std::to_string(min));
    (*out_)[key] = x;
    return x;
  }

  bool boolean(const std::string& key, bool def) {
    if (!has(key)) return (*out_)[key] = def, def;
    if (!j_[key].is_boolean()) fail(at(key), "expected true or false");
    const bool b = j_[key].get<bool>();
    (*out_)[key] = b;
    return b;
  }

  std::string string(const std::string& key, std::optional<std::string> def) {
    if (!has(key)) {
      if (!def) fail(at(key), "required");
      (*out_)[key] = *def;
      return *def;
    }
    if (!j_[key].is_string()) fail(at(key), "expected a string");
    const std::string s = j_[key].get<std::string>();
    (*out_)[key] = s;
    return s;
  }

  std::vector<double> numbers(const std::string& key,
                              std::optional<std::vector<double>> def) {
    if (!has(key)) {
      if (!def) fail(at(key), "required");
      (*out_)[key] = *def;
      return *def;
    }
    const json& v = j_[key];
    std::vector<double> xs;
    if (v.is_number()) {
      xs.push_back(v.get<double>());
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
          fail(at(key) + "/" + std::to_string(i), "expected a number");
        }
        xs.push_back(v[i].get<double>());
      }
    } else {
      fail(at(key), "expected a number or an array of numbers");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i])) {
        fail(at(key) + "/" + std::to_string(i), "expected a finite number");
      }
    }
    (*out_)[key] = xs;
    return xs;
  }

  std::vector<bool> flags(const std::string& key, std::vector<bool> def) {
    if (!has(key)) return (*out_)[key] = def, def;
    const json& v = j_[key];
    if (!v.is_array()) fail(at(key), "expected an array of booleans");
    std::vector<bool> xs;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_boolean()) {
        fail(at(key) + "/" + std::to_string(i), "expected true or false");
      }
      xs.push_back(v[i].get<bool>());
    }
    (*out_)[key] = xs;
    return xs;
  }

  // Child object; an absent key reads as {}.
  Obj child(const std::string& key) {
    has(key);
    const json& v = j_.contains(key) ? j_[key] : empty();
    return Obj(v, at(key), &(*out_)[key], text_);
  }

  const json& raw(const std::string& key) {
    has(key);
    return j_[key];
  }
  json& out(const std::string& key) { return (*out_)[key]; }
  const std::string& path() const { return path_; }
  const std::string* text() const { return text_; }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) fail(at(k), "unknown key");
    }
  }

 private:
  static const json& empty() {
    static const json e = json::object();
    return e;
  }
  double require(const std::string& key, std::optional<double> def) const {
    if (!def) fail(at(key), "required");
    return *def;
  }
  double put(const std::string& key, double x) {
    (*out_)[key] = x;
    return x;
  }

  const json& j_;
  std::string path_;
  json* out_;
  const std::string* text_;
  std::set<std::string> seen_;
};

// Re-throws library validation errors against a config field.
template <typename F>
auto guarded(const Obj& o, const std::string& field, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    o.fail(field, e.what());
  }
}

GroupSpec read_group(Obj o) {
  const std::string law = o.string("law", "abelian");
  GroupSpec g = GroupSpec::euclidean(2);
  if (law == "heisenberg") {
    const auto n = o.integer("n", 1);
    if (n < 1) o.fail(o.at("n"), "must be at least 1");
    g = guarded(o, o.path(), [&] { return GroupSpec::heisenberg(n); });
  } else if (law == "abelian") {
    const auto w = o.numbers("weights", std::vector<double>{1.0, 1.0});
    g = guarded(o, o.at("weights"), [&] { return GroupSpec::abelian(w); });
  } else {
    o.fail(o.at("law"), "expected \"abelian\" or \"heisenberg\", got \"" + law + "\"");
  }
  o.finish();
  return g;
}

QuasiNormSpec read_norm(Obj o, const GroupSpec& g) {
  const std::string kind =
      o.string("kind", g.law() == GroupLaw::kHeisenberg ? "koranyi"
                       : g.all_weights_one()            ? "euclidean"
                                                        : "max");
  QuasiNormSpec n = QuasiNormSpec::max_weighted(g);
  if (kind == "euclidean") {
    n = guarded(o, o.path(), [&] { return QuasiNormSpec::euclidean(g); });
  } else if (kind == "max") {
    n = QuasiNormSpec::max_weighted(g);
  } else if (kind == "sum") {
    const auto rho = o.integer("rho", default_sum_exponent(g));
    n = guarded(o, o.at("rho"), [&] {
      return QuasiNormSpec::sum_weighted(g, static_cast<int>(rho));
    });
  } else if (kind == "koranyi") {
    const double c = o.positive("c", 16.0);
    n = guarded(o, o.path(), [&] { return QuasiNormSpec::koranyi(g, c); });
  } else {
    o.fail(o.at("kind"), "unknown norm \"" + kind + "\"");
  }
  o.finish();
  return n;
}

ExponentSet read_exponents(Obj o, double Q) {
  ExponentSet e;
  e.Q = Q;
  e.p = o.number("p", 4.0 / 3.0);
  e.lambda = o.number("lambda", 0.5 * Q);
  e.alpha = o.number("alpha", 0.0);
  e.beta = o.number("beta", 0.0);
  if (o.has("q")) {
    e.q = o.number("q", std::nullopt);
  } else {
    const ExponentVerdict v = validate_exponents(Q, e.p, e.lambda, e.alpha, e.beta);
    if (!(v.inv_q > 0.0)) {
      o.fail(o.path(), "q is not given and the balance relation leaves 1/q <= 0");
    }
    e.q = 1.0 / v.inv_q;
    o.out("q") = e.q;
  }
  if (!(e.lambda > 0.0 && e.lambda < Q)) o.fail(o.at("lambda"), "must lie in (0, Q)");
  if (!(e.p >= 1.0)) o.fail(o.at("p"), "must be >= 1");
  if (!(e.q >= 1.0)) o.fail(o.at("q"), "must be >= 1");
  o.finish();
  return e;
}

QuadratureSpec read_quadrature(Obj o, std::uint64_t seed,
                               std::optional<std::uint64_t> seed_override) {
  QuadratureSpec s;
  s.method = guarded(o, o.at("method"),
                     [&] { return parse_method(o.string("method", "polar")); });
  s.samples = o.count("samples", s.samples);
  s.points_per_axis = o.count("points_per_axis", s.points_per_axis);
  s.L = o.positive("L", s.L);
  s.eps = o.number("eps", s.eps);
  s.seed = o.count("seed", seed, 0);
  if (seed_override) s.seed = *seed_override, o.out("seed") = s.seed;
  s.target_rel_err = o.positive("target_rel_err", s.target_rel_err);
  s.qmc_shifts = o.count("qmc_shifts", s.qmc_shifts);
  s.max_shells = o.count("max_shells", s.max_shells);
  s.angular = o.count("angular", 16);
  s.radial_order = o.count("radial_order", s.radial_order);
  s.panels_per_octave = static_cast<int>(o.count("panels_per_octave", 1));
  s.r_min = o.positive("r_min", s.r_min);
  const std::string exec = o.string("exec", "parallel");
  if (exec == "parallel") {
    s.exec = Execution::kParallel;
  } else if (exec == "serial") {
    s.exec = Execution::kSerial;
  } else {
    o.fail(o.at("exec"), "expected \"parallel\" or \"serial\"");
  }
  guarded(o, o.path(), [&] { s.validate(); });
  o.finish();
  return s;
}

TestFunction read_function(Obj o, const QuasiNormSpec& n) {
  std::string kind = o.string("kind", std::nullopt);
  if (kind == "power_decay") kind = "power", o.out("kind") = kind;
  const GroupSpec& g = n.group();
  if (kind == "zero") {
    o.finish();
    return TestFunction::zero(n);
  }
  const double amp = o.number("amp", 1.0);
  std::vector<double> c = o.numbers("center", std::vector<double>(g.dim(), 0.0));
  if (c.size() != g.dim()) {
    o.fail(o.at("center"), "expected " + std::to_string(g.dim()) + " coordinates");
  }
  const double t = o.positive("dilation", 1.0);
  // Built at D_t c so that dilating by t puts the center at c.
  const Point center = dilate(g, t, Point(std::span<const double>(c)));
  auto build = [&]() -> TestFunction {
    if (kind == "gaussian") {
      return TestFunction::gaussian(n, o.numbers("sigma", std::vector<double>{1.0}),
                                    amp, center);
    }
    if (kind == "ball") return TestFunction::ball(n, o.positive("R", 1.0), amp, center);
    if (kind == "power") {
      const double s = o.number("s", std::nullopt);
      return TestFunction::power_decay(n, s, o.positive("delta", 1.0), amp, center);
    }
    if (kind == "conformal") {
      return TestFunction::conformal(n, o.number("gamma", std::nullopt), amp, center);
    }
    o.fail(o.at("kind"), "unknown test function \"" + kind + "\"");
  };
  TestFunction u = guarded(o, o.path(), build);
  if (t != 1.0) u = u.dilated(t);
  o.finish();
  return u;
}

WeightSpec read_weight(Obj o) {
  const std::string form = o.string("form", "power");
  if (form != "power") {
    o.fail(o.at("form"), "only power weights can be configured, got \"" + form + "\"");
  }
  const double w = o.number("w", std::nullopt);
  o.finish();
  return WeightSpec::power(w);
}

HardyScenario read_hardy(Obj o) {
  HardyScenario h;
  h.W = read_weight(o.child("W"));
  h.U = read_weight(o.child("U"));
  const std::string side = o.string("side", "inner");
  if (side == "inner") {
    h.side = HardySide::kInner;
  } else if (side == "outer") {
    h.side = HardySide::kOuter;
  } else {
    o.fail(o.at("side"), "expected \"inner\" or \"outer\"");
  }
  h.samples = o.count("samples", h.samples, 0);
  HardyOptions& ho = h.options;
  ho.R_lo = o.positive("R_lo", ho.R_lo);
  ho.R_hi = o.positive("R_hi", ho.R_hi);
  if (!(ho.R_hi > ho.R_lo)) o.fail(o.at("R_hi"), "must exceed R_lo");
  ho.R_points = o.count("R_points", ho.R_points, 2);
  ho.slope_tol = o.positive("slope_tol", ho.slope_tol);
  ho.slack = o.number("slack", ho.slack);
  ho.growth_dilations = o.numbers("growth", ho.growth_dilations);
  for (double t : ho.growth_dilations) {
    if (!(t > 0.0)) o.fail(o.at("growth"), "dilations must be positive");
  }
  o.finish();
  return h;
}

ExtremizeScenario read_extremize(Obj o, const ExponentSet& e, std::uint64_t seed) {
  ExtremizeScenario x;
  x.family = o.string("family", "conformal");
  std::vector<double> lo, hi;
  std::vector<bool> logs;
  if (x.family == "conformal") {
    // (gamma, dilation)
    lo = {0.9, 0.25};
    hi = {4.0, 4.0};
    logs = {false, true};
  } else if (x.family == "power") {
    // (s, delta); s above alpha + Q/p keeps |x|^alpha u in L^p.
    const double s0 = e.alpha + e.Q / e.p;
    lo = {s0 + 0.1, 0.25};
    hi = {s0 + 4.0, 4.0};
    logs = {false, true};
  } else {
    o.fail(o.at("family"), "expected \"conformal\" or \"power\"");
  }
  x.lo = o.numbers("lo", lo);
  x.hi = o.numbers("hi", hi);
  std::vector<double> start(x.lo.size());
  for (std::size_t i = 0; i < start.size() && i < x.hi.size(); ++i) {
    start[i] = logs[i] ? std::sqrt(x.lo[i] * x.hi[i]) : 0.5 * (x.lo[i] + x.hi[i]);
  }
  x.start = o.numbers("start", start);
  x.log_scale = o.flags("log_scale", logs);
  if (x.lo.size() != 2 || x.hi.size() != 2 || x.start.size() != 2 ||
      x.log_scale.size() != 2) {
    o.fail(o.path(), "lo, hi, start and log_scale need two entries");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (!(x.lo[i] < x.hi[i])) o.fail(o.at("hi"), "must exceed lo");
    if (x.start[i] < x.lo[i] || x.start[i] > x.hi[i]) {
      o.fail(o.at("start"), "must lie inside [lo, hi]");
    }
    if (x.log_scale[i] && !(x.lo[i] > 0.0)) {
      o.fail(o.at("lo"), "log-scaled parameters need lo > 0");
    }
  }
  OptimizerOptions& oo = x.optimizer;
  oo.restarts = o.count("restarts", 3);
  oo.max_iter = o.count("max_iter", 30);
  oo.simplex_size = o.positive("simplex_size", 0.2);
  oo.f_tol = o.positive("f_tol", oo.f_tol);
  oo.seed = o.count("seed", seed, 0);
  x.spread_tolerance = o.positive("spread_tolerance", x.spread_tolerance);
  o.finish();
  return x;
}

ScenarioConfig read_scenario(const json& root, const std::string* text,
                             const ConfigOverrides& ov) {
  ScenarioConfig c;
  json out;
  Obj o(root, "", &out, text);
  c.seed = o.count("seed", 42, 0);
  if (ov.seed) c.seed = *ov.seed, out["seed"] = c.seed;
  double scale = o.positive("tolerance_scale", 1.0);
  if (ov.tolerance_scale) {
    if (!(*ov.tolerance_scale > 0.0)) o.fail("/tolerance_scale", "must be positive");
    scale = *ov.tolerance_scale;
    out["tolerance_scale"] = scale;
  }
  c.group = read_group(o.child("group"));
  c.norm = read_norm(o.child("norm"), c.group);
  if (o.has("norm2")) c.norm2 = read_norm(o.child("norm2"), c.group);
  const double Q = homogeneous_dimension(c.group);
  c.exponents = read_exponents(o.child("exponents"), Q);
  c.quadrature = read_quadrature(o.child("quadrature"), c.seed, ov.seed);

  {
    Obj f = o.child("family");
    const bool listed = f.has("functions");
    if (listed) {
      const json& arr = f.raw("functions");
      if (!arr.is_array()) f.fail(f.at("functions"), "expected an array");
      json& fo = f.out("functions") = json::array();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        fo.push_back(json::object());
        c.functions.push_back(read_function(
            Obj(arr[i], f.at("functions") + "/" + std::to_string(i), &fo.back(), text),
            c.norm));
      }
    }
    c.standard_family = f.boolean("standard", !listed);
    c.family_seed = f.count("seed", c.family_seed, 0);
    c.t_list = f.numbers("t", c.t_list);
    for (double t : c.t_list) {
      if (!(t > 0.0)) f.fail(f.at("t"), "dilations must be positive");
    }
    if (c.t_list.empty()) f.fail(f.at("t"), "needs at least one dilation");
    f.finish();
  }
  if (o.has("weights")) c.hardy = read_hardy(o.child("weights"));

  c.tolerance_scale = scale;
  c.tolerance = o.positive("tolerance", c.tolerance) * scale;
  c.sweep_tolerance = o.positive("sweep_tolerance", c.sweep_tolerance) * scale;
  c.fitted_tolerance = o.positive("fitted_tolerance", c.fitted_tolerance) * scale;
  if (c.hardy) {
    c.hardy->options.slack *= scale;
    c.hardy->options.slope_tol *= scale;
  }
  c.samples = o.count("samples", c.samples);
  {
    Obj w = o.child("weak_type");
    std::vector<double> z;
    for (int i = 0; i <= 40; ++i) z.push_back(0.1 * std::pow(30.0, i / 40.0));
    c.zetas = w.numbers("zetas", z);
    if (c.zetas.empty()) w.fail(w.at("zetas"), "needs at least one level");
    for (double v : c.zetas) {
      if (!(v > 0.0)) w.fail(w.at("zetas"), "levels must be positive");
    }
    c.points_per_shell = w.count("points_per_shell", c.points_per_shell);
    w.finish();
  }
  {
    Obj d = o.child("dyadic");
    c.k_lo = static_cast<int>(d.integer("k_lo", -4));
    c.k_hi = static_cast<int>(d.integer("k_hi", 4));
    if (c.k_hi < c.k_lo) d.fail(d.at("k_hi"), "must be >= k_lo");
    d.finish();
  }
  c.extremize = read_extremize(o.child("extremize"), c.exponents, c.seed);
  c.extremize.spread_tolerance *= scale;
  {
    Obj out_dir = o.child("output");
    c.out_dir = out_dir.string("dir", "out");
    if (ov.out_dir) c.out_dir = *ov.out_dir, out_dir.out("dir") = c.out_dir;
    out_dir.finish();
  }
  o.finish();
  c.effective = std::move(out);
  return c;
}

}  // namespace

TestFunction parse_test_function(const QuasiNormSpec& n, const json& j) {
  json out;
  return read_function(Obj(j, "", &out, nullptr), n);
}

ScenarioConfig parse_scenario(const std::string& text,
                              const ConfigOverrides& overrides) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // Strip the library's "[json.exception.parse_error.101] " prefix.
    std::string msg = e.what();
    if (const auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    throw ConfigError("", line_at(text, e.byte == 0 ? 0 : e.byte - 1), msg);
  }
  return read_scenario(root, &text, overrides);
}

ScenarioConfig load_scenario(const std::string& path,
                             const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), overrides);
}

}  // namespace rieszlab
