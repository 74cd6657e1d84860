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


#ifndef RIESZLAB_CONFIG_H_
#define RIESZLAB_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rieszlab/group.h"
#include "rieszlab/hardy.h"
#include "rieszlab/harness.h"
#include "rieszlab/quad.h"
#include "rieszlab/quasinorm.h"
#include "rieszlab/test_function.h"

namespace rieszlab {

// A malformed scenario. `field` is a JSON pointer ("/quadrature/samples"),
// `line` is 1-based, 0 when unknown.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, std::size_t line, const std::string& message);
  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

struct HardyScenario {
  WeightSpec W = WeightSpec::power(0.0);
  WeightSpec U = WeightSpec::power(0.0);
  HardySide side = HardySide::kInner;
  std::size_t samples = 20;
  HardyOptions options;
};

struct ExtremizeScenario {
  std::string family = "conformal";  // or "power"
  std::vector<double> lo, hi, start;
  std::vector<bool> log_scale;
  OptimizerOptions optimizer;
  double spread_tolerance = 0.01;
};

// Everything a subcommand needs, validated. Missing sections take defaults:
// Euclidean R^2, lambda = Q/2, p = 4/3, q from the balance relation, and the
// polar rule with 16 directions per half circle.
struct ScenarioConfig {
  GroupSpec group = GroupSpec::euclidean(2);
  QuasiNormSpec norm = QuasiNormSpec::euclidean(GroupSpec::euclidean(2));
  std::optional<QuasiNormSpec> norm2;
  ExponentSet exponents;
  std::optional<HardyScenario> hardy;
  // Explicit members first, then the standard family when enabled.
  std::vector<TestFunction> functions;
  bool standard_family = true;
  std::uint64_t family_seed = 2024;
  std::vector<double> t_list = {1e-2, 1e-1, 1.0, 1e1, 1e2};
  QuadratureSpec quadrature;
  // Tolerances below are already multiplied by tolerance_scale.
  double tolerance_scale = 1.0;
  double tolerance = 0.02;         // quotient comparisons
  double sweep_tolerance = 0.05;   // quotient variation along t
  double fitted_tolerance = 0.10;  // fitted constants
  std::size_t samples = 10000;     // axioms, norm-equiv
  std::vector<double> zetas;
  std::size_t points_per_shell = 4096;
  int k_lo = -4, k_hi = 4;
  ExtremizeScenario extremize;
  std::string out_dir = "out";
  std::uint64_t seed = 42;

  // The configuration with every default filled in. Parsing it again
  // yields the same scenario.
  nlohmann::ordered_json effective;
};

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<double> tolerance_scale;
};

// Throws ConfigError. Unknown keys are rejected.
ScenarioConfig parse_scenario(const std::string& text,
                              const ConfigOverrides& overrides = {});
ScenarioConfig load_scenario(const std::string& path,
                             const ConfigOverrides& overrides = {});

// Builds a test function from { "kind": "gaussian", "sigma": [...], ... }.
TestFunction parse_test_function(const QuasiNormSpec& n,
                                 const nlohmann::ordered_json& j);

}  // namespace rieszlab

#endif  // RIESZLAB_CONFIG_H_
