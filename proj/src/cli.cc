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


#include "rieszlab/cli.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "rieszlab/acceptance.h"
#include "rieszlab/config.h"
#include "rieszlab/hardy.h"
#include "rieszlab/harness.h"
#include "rieszlab/kernels.h"
#include "rieszlab/quad.h"
#include "rieszlab/quasinorm.h"

namespace rieszlab {
namespace {

using json = nlohmann::ordered_json;

struct Outcome {
  explicit Outcome(VerificationReport r = VerificationReport()) : report(std::move(r)) {}

  VerificationReport report;
  json extra = json::object();
  std::string csv;  // empty: no table
};

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Outcome axioms(const ScenarioConfig& c) {
  Outcome o{check_axioms(c.norm, c.samples, c.seed, 1e-12 * c.tolerance_scale)};
  const TriangleEstimate t = quasi_triangle_constant(c.norm, c.samples, c.seed);
  o.report.add_quantity("triangle_constant", t.constant);
  if (c.norm.declared_triangle()) {
    o.report.check_le("triangle inequality", t.constant, 1.0 + 1e-10,
                      "declared a triangle norm");
  }
  return o;
}

Outcome sphere(const ScenarioConfig& c) {
  Outcome o{VerificationReport("sphere_measure")};
  const Estimate e = sphere_measure(c.norm, c.quadrature);
  o.report.add_quantity("sphere_measure", e.value, e.error);
  o.report.check_true("finite", !e.divergent && std::isfinite(e.value), e.reason);
  if (c.norm.kind() == NormKind::kEuclidean) {
    const double N = static_cast<double>(c.group.dim());
    const double classical =
        2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
    o.report.add_quantity("classical_surface_area", classical);
    o.report.check_le("relative error vs classical surface area",
                      std::abs(e.value - classical) / classical, c.tolerance);
  }
  return o;
}

Outcome norm_equiv(const ScenarioConfig& c) {
  if (!c.norm2) throw ConfigError("/norm2", 0, "required by norm-equiv");
  Outcome o{VerificationReport("norm_equivalence")};
  const EquivalenceConstants e =
      equivalence_constants(c.norm, *c.norm2, c.samples, c.seed);
  o.report.add_quantity("c_low", e.c_low);
  o.report.add_quantity("c_high", e.c_high);
  o.report.add_quantity("skipped", static_cast<double>(e.skipped));
  o.report.check_true("c_low > 0 and c_high finite",
                      e.c_low > 0.0 && std::isfinite(e.c_high));
  o.extra["norms"] = {c.norm.name(), c.norm2->name()};
  return o;
}

Outcome hardy(const ScenarioConfig& c) {
  if (!c.hardy) throw ConfigError("/weights", 0, "required by hardy-check");
  const HardyScenario& h = *c.hardy;
  Outcome o{VerificationReport("hardy")};
  const auto fs = hardy_sample_family(c.norm, h.samples, c.family_seed);
  const HardyVerdict v = hardy_verify(c.norm, h.side, h.W, h.U, c.exponents.p,
                                      c.exponents.q, fs, c.quadrature, h.options);
  o.report.add_quantity("A", v.A_value);
  o.report.add_quantity("slope_lo", v.slope_lo);
  o.report.add_quantity("slope_hi", v.slope_hi);
  if (v.finite) {
    o.report.add_quantity("C_empirical", v.sandwich.C_empirical);
    o.report.add_quantity("sandwich_upper", v.sandwich.upper);
    o.report.check_le("C_empirical <= (p')^(1/p') p^(1/q) A (1 + slack)",
                      v.sandwich.C_empirical,
                      v.sandwich.upper * (1.0 + h.options.slack));
  } else {
    o.report.add_note("finite=false: " + v.reason);
  }
  o.extra["verdict"] = v.to_json();
  std::ostringstream csv;
  csv << "R,A,w_factor,u_factor\n";
  for (const ProfilePoint& p : v.profile) {
    csv << csv_number(p.R) << ',' << csv_number(p.A) << ','
        << csv_number(p.w_factor) << ',' << csv_number(p.u_factor) << '\n';
  }
  o.csv = csv.str();
  return o;
}

Outcome verify(const ScenarioConfig& c, bool hls) {
  const ExponentSet& e = c.exponents;
  if (hls && (e.alpha != 0.0 || e.beta != 0.0)) {
    throw ConfigError("/exponents", 0, "verify-hls needs alpha = beta = 0");
  }
  Outcome o{VerificationReport(hls ? "verify_hls" : "verify_stein_weiss")};
  const ExponentVerdict v = validate_exponents(e.Q, e.p, e.lambda, e.alpha, e.beta);
  o.extra["exponents"] = v.to_json();
  o.report.check_true("exponents admissible", v.admissible);
  o.report.check_le("|balance defect|", std::abs(e.balance_defect()), 1e-9,
                    "q must satisfy the balance relation");
  if (!v.admissible) return o;

  std::vector<TestFunction> family = c.functions;
  if (c.standard_family) {
    const auto std_family = standard_family(c.norm, e, c.family_seed);
    family.insert(family.end(), std_family.begin(), std_family.end());
  }
  if (family.empty()) throw ConfigError("/family", 0, "no test functions");
  const Sweep sw = boundedness_sweep(c.norm, e, family, c.t_list, c.quadrature,
                                     c.sweep_tolerance);
  o.report.merge(sw.report, "sweep/");
  DilationOptions d;
  d.spread_tolerance = c.tolerance;
  d.drift_tolerance = c.tolerance;
  o.report.merge(dilation_invariance_check(c.norm, e, family.front(),
                                           {0.25, 1.0, 4.0}, c.quadrature, d),
                 "dilation/");
  std::ostringstream csv;
  write_quotient_csv(csv, sw.rows);
  o.csv = csv.str();
  return o;
}

TestFunction first_or(const ScenarioConfig& c, TestFunction fallback) {
  return c.functions.empty() ? fallback : c.functions.front();
}

Outcome weak(const ScenarioConfig& c) {
  WeakTypeOptions w;
  w.tolerance = c.fitted_tolerance;
  w.points_per_shell = c.points_per_shell;
  const TestFunction u = first_or(c, TestFunction::ball(c.norm, 1.0));
  const WeakTypeResult r =
      weak_type_check(c.norm, c.exponents, u, c.zetas, c.quadrature, w);
  Outcome o{r.report};
  o.extra["function"] = u.to_json();
  std::ostringstream csv;
  csv << "zeta,ratio\n";
  for (std::size_t i = 0; i < r.zetas.size(); ++i) {
    csv << csv_number(r.zetas[i]) << ',' << csv_number(r.ratios[i]) << '\n';
  }
  o.csv = csv.str();
  return o;
}

Outcome dyadic(const ScenarioConfig& c) {
  const TestFunction u = first_or(c, TestFunction::gaussian(c.norm, {1.0}));
  const DyadicProfile d = dyadic_profile(c.norm, c.exponents, u, c.k_lo, c.k_hi,
                                         c.quadrature, c.fitted_tolerance);
  Outcome o{d.report};
  o.extra["function"] = u.to_json();
  std::ostringstream csv;
  csv << "k,S,B,weighted,ratio\n";
  for (const DyadicShell& s : d.shells) {
    csv << s.k << ',' << csv_number(s.S) << ',' << csv_number(s.B) << ','
        << csv_number(s.weighted) << ',' << csv_number(s.ratio) << '\n';
  }
  o.csv = csv.str();
  return o;
}

Outcome extremize_cmd(const ScenarioConfig& c) {
  const ExtremizeScenario& x = c.extremize;
  const QuasiNormSpec n = c.norm;
  ParamFamily f;
  if (x.family == "conformal") {
    f.make = [n](std::span<const double> p) {
      return TestFunction::conformal(n, p[0]).dilated(p[1]);
    };
  } else {
    f.make = [n](std::span<const double> p) {
      return TestFunction::power_decay(n, p[0], p[1]);
    };
  }
  f.lo = x.lo;
  f.hi = x.hi;
  f.start = x.start;
  f.log_scale = x.log_scale;
  const ExtremizeResult r = extremize(n, c.exponents, f, x.optimizer, c.quadrature);
  Outcome o{VerificationReport("extremize")};
  o.report.add_quantity("best_quotient", r.best_quotient);
  o.report.add_quantity("restart_spread", r.spread);
  o.report.check_true("best quotient finite", std::isfinite(r.best_quotient));
  o.report.check_lt("multi-start spread", r.spread, x.spread_tolerance);
  o.extra["result"] = r.to_json();
  std::ostringstream csv;
  csv << "restart,p0,p1,quotient,ok\n";
  for (const TracePoint& t : r.trace) {
    csv << t.restart;
    for (double p : t.params) csv << ',' << csv_number(p);
    csv << ',' << csv_number(t.quotient) << ',' << (t.ok ? 1 : 0) << '\n';
  }
  o.csv = csv.str();
  return o;
}

Outcome all(const ScenarioConfig& c, std::ostream& out) {
  AcceptanceOptions a;
  a.seed = c.seed;
  a.tolerance_scale = c.tolerance_scale;
  Outcome o{VerificationReport("acceptance")};
  json& crit = o.extra["criteria"] = json::array();
  std::ostringstream csv;
  csv << "criterion,title,passed,seconds\n";
  for (int id = 1; id <= kCriteria; ++id) {
    const CriterionResult r = run_criterion(id, a);
    out << r.line() << std::endl;
    o.report.check_true("criterion " + std::to_string(id) + " " + r.title,
                        r.passed, r.summary);
    crit.push_back(r.to_json());
    csv << id << ',' << r.title << ',' << (r.passed ? 1 : 0) << ','
        << csv_number(r.seconds) << '\n';
  }
  o.csv = csv.str();
  return o;
}

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"axioms", "quasi-norm axioms i-iii and the triangle constant"},
    {"sphere-measure", "|S| of the configured norm"},
    {"norm-equiv", "equivalence constants between norm and norm2"},
    {"hardy-check", "A-profile and sandwich bound for the configured weights"},
    {"verify-hls", "HLS quotients over the family and dilation sweep"},
    {"verify-stein-weiss", "Stein-Weiss quotients over the family and dilation sweep"},
    {"weak-type", "distribution function bound for the first family member"},
    {"dyadic", "dyadic shell constants for p = q"},
    {"extremize", "simplex search over a two-parameter family"},
    {"all", "the acceptance suite"},
};

Outcome dispatch(const std::string& cmd, const ScenarioConfig& c,
                 std::ostream& out) {
  if (cmd == "axioms") return axioms(c);
  if (cmd == "sphere-measure") return sphere(c);
  if (cmd == "norm-equiv") return norm_equiv(c);
  if (cmd == "hardy-check") return hardy(c);
  if (cmd == "verify-hls") return verify(c, true);
  if (cmd == "verify-stein-weiss") return verify(c, false);
  if (cmd == "weak-type") return weak(c);
  if (cmd == "dyadic") return dyadic(c);
  if (cmd == "extremize") return extremize_cmd(c);
  return all(c, out);
}

void write_file(const std::filesystem::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"rieszlab: Riesz potential and Stein-Weiss verification"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<double> tolerance_scale;
  app.add_option("--config", config_path, "scenario JSON")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--threads", threads, "OpenMP threads")->check(CLI::PositiveNumber);
  app.add_option("--tolerance-scale", tolerance_scale, "multiplies every tolerance")
      ->check(CLI::PositiveNumber);
  for (const auto& [name, help] : kCommands) app.add_subcommand(name, help);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  ScenarioConfig cfg;
  const ConfigOverrides ov{seed, out_dir, tolerance_scale};
  try {
    cfg = config_path.empty() ? parse_scenario("{}", ov)
                              : load_scenario(config_path, ov);
  } catch (const ConfigError& e) {
    err << "config error: " << (config_path.empty() ? "" : config_path + ": ")
        << e.what() << "\n";
    return kExitConfigError;
  }
  const int previous_threads = thread_count();
  if (threads) set_thread_count(*threads);

  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    o = dispatch(cmd, cfg, out);
  } catch (const std::invalid_argument& e) {
    set_thread_count(previous_threads);
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    set_thread_count(previous_threads);
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  set_thread_count(previous_threads);
  o.report.set_runtime(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  o.report.set_seed(cfg.seed);

  json doc;
  doc["subcommand"] = cmd;
  doc["config"] = cfg.effective;
  doc["passed"] = o.report.all_passed();
  doc["report"] = o.report.to_json();
  for (auto& [k, v] : o.extra.items()) doc[k] = v;

  const std::filesystem::path dir(cfg.out_dir);
  try {
    std::filesystem::create_directories(dir);
    write_file(dir / (cmd + ".json"), doc.dump(2) + "\n");
    if (!o.csv.empty()) write_file(dir / (cmd + ".csv"), o.csv);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  out << cmd << ": " << (o.report.all_passed() ? "PASS" : "FAIL") << "\n";
  for (const Check& ch : o.report.checks()) {
    out << "  " << (ch.passed ? "ok   " : "FAIL ") << ch.name << " = "
        << number(ch.value).dump() << " " << ch.relation << " "
        << number(ch.bound).dump() << "\n";
  }
  out << "  report: " << (dir / (cmd + ".json")).string() << "\n";
  return o.report.all_passed() ? kExitPass : kExitCheckFailed;
}

}  // namespace rieszlab
