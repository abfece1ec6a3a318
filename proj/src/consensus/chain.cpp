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

#include "minagree/consensus/chain.hpp"
#include "minagree/consensus/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace minagree {
namespace consensus {

std::vector<NotarizedBlock> Finalize(ChainState &chain, uint64_t current_round)
{
  if (chain.blocks.empty() || current_round < 2)
  {
    return {};
  }

  std::unordered_map<uint64_t, std::size_t>         by_round;
  std::unordered_map<Digest, std::size_t, DigestHash> by_hash;
  std::size_t                                        head = 0;
  for (std::size_t i = 0; i < chain.blocks.size(); ++i)
  {
    auto const &block = chain.blocks[i];
    if (!by_round.emplace(block.round, i).second)
    {
      throw ConsensusError(ConsensusError::Code::FORK_DETECTED,
                           "two notarised blocks for round " + std::to_string(block.round));
    }
    by_hash.emplace(block.block_hash, i);
    if (block.round > chain.blocks[head].round)
    {
      head = i;
    }
  }

  uint64_t const limit = current_round - 2;

  std::vector<std::size_t> fresh;
  std::size_t              cursor = head;
  while (true)
  {
    auto const &block = chain.blocks[cursor];
    if (block.round <= chain.finalized_height)
    {
      break;
    }
    if (block.round <= limit)
    {
      fresh.push_back(cursor);
    }
    auto it = by_hash.find(block.proposal.prev_block_hash);
    if (it == by_hash.end())
    {
      break;
    }
    cursor = it->second;
  }

  std::reverse(fresh.begin(), fresh.end());

  std::vector<NotarizedBlock> out;
  out.reserve(fresh.size());
  for (auto index : fresh)
  {
    out.push_back(chain.blocks[index]);
  }
  if (!out.empty())
  {
    chain.finalized_height = out.back().round;
    chain.finalized_count += out.size();
  }
  return out;
}

}  // namespace consensus
}  // namespace minagree
