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

#include <stdexcept>
#include <string>

namespace minagree {
namespace consensus {

class ConsensusError : public std::runtime_error
{
public:
  enum class Code
  {
    INSUFFICIENT_STAKERS,
    UNCOVERABLE_TARGETS,
    EMPTY_DAG,
    UNKNOWN_PROPOSER,
    DUPLICATE_PROPOSER,
    NO_PROPOSALS,
    NO_QUORUM,
    FORK_DETECTED,
  };

  ConsensusError(Code code, std::string const &what)
    : std::runtime_error{what}
    , code_{code}
  {}

  Code code() const
  {
    return code_;
  }

private:
  Code code_;
};

}  // namespace consensus
}  // namespace minagree
