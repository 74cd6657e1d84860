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


#ifndef RIESZLAB_ACCEPTANCE_H_
#define RIESZLAB_ACCEPTANCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "rieszlab/report.h"

namespace rieszlab {

inline constexpr int kCriteria = 9;

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  // Multiplies every tolerance. 1 is the release gate.
  double tolerance_scale = 1.0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string summary;  // the headline numbers
  double seconds = 0.0;
  VerificationReport report;

  // "[PASS] 3 radial closed forms: ... (1.2 s)"
  std::string line() const;
  nlohmann::ordered_json to_json() const;
};

// Runs criterion `id` in 1..kCriteria. An exception inside a criterion is
// reported as a failure with its message.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            const AcceptanceOptions& opts = {});

}  // namespace rieszlab

#endif  // RIESZLAB_ACCEPTANCE_H_
