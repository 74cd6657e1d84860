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

#ifndef RIESZLAB_REPORT_H_
#define RIESZLAB_REPORT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace rieszlab {

// A numeric result with its error estimate.
struct Quantity {
  std::string name;
  double value = 0.0;
  double error = 0.0;
};

// One pass/fail decision. `passed` is always derived from value and bound.
struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", ">=", "<", "=="
  bool passed = false;
  std::string detail;
};

// Structured result record shared by all verification operations.
class VerificationReport {
 public:
  explicit VerificationReport(std::string name = {}) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  void set_inputs(nlohmann::ordered_json inputs) { inputs_ = std::move(inputs); }
  const nlohmann::ordered_json& inputs() const { return inputs_; }

  void set_seed(std::uint64_t seed) { seed_ = seed; }
  std::uint64_t seed() const { return seed_; }
  void set_samples(std::size_t n) { samples_ = n; }
  std::size_t samples() const { return samples_; }
  void set_runtime(double seconds) { runtime_ = seconds; }

  void add_quantity(std::string name, double value, double error = 0.0);
  const Quantity* find_quantity(const std::string& name) const;
  double quantity(const std::string& name) const;
  const std::vector<Quantity>& quantities() const { return quantities_; }

  const Check& check_le(std::string name, double value, double bound,
                        std::string detail = {});
  const Check& check_ge(std::string name, double value, double bound,
                        std::string detail = {});
  const Check& check_lt(std::string name, double value, double bound,
                        std::string detail = {});
  // A boolean verdict recorded as 1/0.
  const Check& check_true(std::string name, bool ok, std::string detail = {});
  const std::vector<Check>& checks() const { return checks_; }

  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  // Appends another report's quantities and checks with a name prefix.
  void merge(const VerificationReport& other, const std::string& prefix);

  bool all_passed() const;
  nlohmann::ordered_json to_json() const;

 private:
  std::string name_;
  nlohmann::ordered_json inputs_ = nlohmann::ordered_json::object();
  std::uint64_t seed_ = 0;
  std::size_t samples_ = 0;
  double runtime_ = 0.0;
  std::vector<Quantity> quantities_;
  std::vector<Check> checks_;
  std::vector<std::string> notes_;
};

}  // namespace rieszlab

#endif  // RIESZLAB_REPORT_H_
