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

#include "minagree/core/logging.hpp"

#include <cstdlib>
#include <string>

namespace minagree {

LogLevel CurrentLogLevel()
{
  static LogLevel const level = [] {
    char const *env = std::getenv("MINAGREE_LOG");
    if (env == nullptr)
    {
      return LogLevel::ERROR;
    }

    std::string const value{env};
    if (value == "debug")
    {
      return LogLevel::DEBUG;
    }
    if (value == "info")
    {
      return LogLevel::INFO;
    }
    return LogLevel::ERROR;
  }();

  return level;
}

}  // namespace minagree
