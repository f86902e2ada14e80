// Copyright 2026 The Cantoria Authors
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

#ifndef CANTORIA_CLI_HPP_
#define CANTORIA_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace cantoria::cli {

inline constexpr const char* kSchema = "cantoria/1";

/// Runs one command line (without the program name). Tableaux are read from
/// a file argument or from `in`. Returns the process exit code: 2 for usage
/// and input errors; `check` returns 1 for a non-Cantorian tableau and
/// `selftest` returns 1 when a check fails.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace cantoria::cli

#endif  // CANTORIA_CLI_HPP_
