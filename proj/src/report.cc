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

#include "rieszlab/report.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rieszlab {
namespace {

nlohmann::ordered_json number(double v) {
  // JSON has no inf/nan; keep them readable instead of null.
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

void VerificationReport::add_quantity(std::string name, double value,
                                      double error) {
  quantities_.push_back({std::move(name), value, error});
}

const Quantity* VerificationReport::find_quantity(const std::string& name) const {
  auto it = std::find_if(quantities_.begin(), quantities_.end(),
                         [&](const Quantity& q) { return q.name == name; });
  return it == quantities_.end() ? nullptr : &*it;
}

double VerificationReport::quantity(const std::string& name) const {
  const Quantity* q = find_quantity(name);
  if (q == nullptr) throw std::out_of_range("no quantity named " + name);
  return q->value;
}

const Check& VerificationReport::check_le(std::string name, double value,
                                          double bound, std::string detail) {
  checks_.push_back({std::move(name), value, bound, "<=", value <= bound,
                     std::move(detail)});
  return checks_.back();
}

const Check& VerificationReport::check_ge(std::string name, double value,
                                          double bound, std::string detail) {
  checks_.push_back({std::move(name), value, bound, ">=", value >= bound,
                     std::move(detail)});
  return checks_.back();
}

const Check& VerificationReport::check_lt(std::string name, double value,
                                          double bound, std::string detail) {
  checks_.push_back({std::move(name), value, bound, "<", value < bound,
                     std::move(detail)});
  return checks_.back();
}

const Check& VerificationReport::check_true(std::string name, bool ok,
                                            std::string detail) {
  checks_.push_back({std::move(name), ok ? 1.0 : 0.0, 1.0, "==", ok,
                     std::move(detail)});
  return checks_.back();
}

void VerificationReport::merge(const VerificationReport& other,
                               const std::string& prefix) {
  for (const Quantity& q : other.quantities_) {
    quantities_.push_back({prefix + q.name, q.value, q.error});
  }
  for (const Check& c : other.checks_) {
    Check copy = c;
    copy.name = prefix + c.name;
    checks_.push_back(std::move(copy));
  }
  for (const std::string& n : other.notes_) notes_.push_back(prefix + n);
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks_.begin(), checks_.end(),
                     [](const Check& c) { return c.passed; });
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["inputs"] = inputs_;
  j["seed"] = seed_;
  j["samples"] = samples_;
  auto& qs = j["quantities"] = nlohmann::ordered_json::array();
  for (const Quantity& q : quantities_) {
    qs.push_back({{"name", q.name}, {"value", number(q.value)},
                  {"error", number(q.error)}});
  }
  auto& cs = j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : checks_) {
    nlohmann::ordered_json cj = {{"name", c.name},
                                 {"value", number(c.value)},
                                 {"relation", c.relation},
                                 {"bound", number(c.bound)},
                                 {"passed", c.passed}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    cs.push_back(std::move(cj));
  }
  if (!notes_.empty()) j["notes"] = notes_;
  j["passed"] = all_passed();
  j["runtime_seconds"] = runtime_;
  return j;
}

}  // namespace rieszlab
