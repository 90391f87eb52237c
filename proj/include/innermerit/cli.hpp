// Copyright 2026 The InnerMerit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "innermerit/time.hpp"

namespace innermerit {

struct CliEnvironment {
  std::function<Timestamp()> clock = [] { return Timestamp::now(); };
};

// Runs the `innermerit` command line. `args` excludes the program name.
// Returns the process exit code: 0 success, 1 command error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliEnvironment& env = {});

}  // namespace innermerit
