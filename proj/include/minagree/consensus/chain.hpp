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

#include "minagree/consensus/notarization.hpp"

#include <cstdint>
#include <vector>

namespace minagree {
namespace consensus {

struct ChainState
{
  std::vector<NotarizedBlock> blocks{};  // notarised, in round order
  uint64_t                    finalized_height{0};  // round of the last final block, 0 for none
  std::size_t                 finalized_count{0};

  Digest HeadHash() const
  {
    return blocks.empty() ? ZERO_DIGEST : blocks.back().block_hash;
  }
};

/// Finalises every notarised block at least two rounds behind `current_round` that lies on the
/// chain ending at the latest block. Returns the newly finalised blocks in round order; a second
/// call for the same round returns nothing. Throws ConsensusError(FORK_DETECTED) when two blocks
/// share a round.
std::vector<NotarizedBlock> Finalize(ChainState &chain, uint64_t current_round);

}  // namespace consensus
}  // namespace minagree
