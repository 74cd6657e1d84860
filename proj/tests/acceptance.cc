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


// Acceptance gate. Prints one line per criterion and exits nonzero when any
// selected criterion fails.
//
//   acceptance            all criteria
//   acceptance 3 7        criteria 3 and 7

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "rieszlab/acceptance.h"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
  if (ids.empty()) {
    for (int i = 1; i <= rieszlab::kCriteria; ++i) ids.push_back(i);
  }
  bool ok = true;
  for (int id : ids) {
    const rieszlab::CriterionResult r = rieszlab::run_criterion(id);
    std::cout << r.line() << std::endl;
    if (!r.passed) {
      for (const auto& c : r.report.checks()) {
        if (!c.passed) {
          std::cout << "    failed: " << c.name << " = " << c.value << " "
                    << c.relation << " " << c.bound
                    << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
        }
      }
    }
    ok = ok && r.passed;
  }
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
