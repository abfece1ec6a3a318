#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2018-2020 Fetch.AI Limited
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <iosfwd>
#include <string>
#include <vector>

namespace minagree {
namespace cli {

constexpr int EXIT_OK            = 0;
constexpr int EXIT_RUNTIME_ERROR = 1;
constexpr int EXIT_CONFIG_ERROR  = 2;

/// Entry point behind the `minagree` binary. `args` excludes the program name. Reports go to
/// `out` unless an output path is given; diagnostics go to `err`.
int RunCli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

}  // namespace cli
}  // namespace minagree
