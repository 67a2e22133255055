// Copyright 2026 The phonapprox Authors
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

// Entry point of the phonapprox command-line tool, callable in-process.

#include <ostream>
#include <string>
#include <vector>

namespace phonapprox::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name. Output documents go to out, diagnostics
// and help text to err (help goes to out when requested explicitly).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phonapprox::cli
