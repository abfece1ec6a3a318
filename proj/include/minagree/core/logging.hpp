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

#include <iostream>
#include <sstream>
#include <string_view>

namespace minagree {

enum class LogLevel
{
  ERROR = 0,
  INFO  = 1,
  DEBUG = 2
};

/// Level read once from MINAGREE_LOG (error | info | debug). Defaults to error.
LogLevel CurrentLogLevel();

template <typename... Args>
void Log(LogLevel level, std::string_view name, Args &&... args)
{
  if (static_cast<int>(level) > static_cast<int>(CurrentLogLevel()))
  {
    return;
  }

  std::ostringstream oss;
  oss << '[' << name << "] ";
  (oss << ... << args);
  oss << '\n';
  std::cerr << oss.str();
}

}  // namespace minagree

#define MINAGREE_LOG_ERROR(name, ...) ::minagree::Log(::minagree::LogLevel::ERROR, name, __VA_ARGS__)
#define MINAGREE_LOG_INFO(name, ...) ::minagree::Log(::minagree::LogLevel::INFO, name, __VA_ARGS__)
#define MINAGREE_LOG_DEBUG(name, ...) ::minagree::Log(::minagree::LogLevel::DEBUG, name, __VA_ARGS__)
