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

#include "minagree/consensus/merkle.hpp"

#include <vector>

namespace minagree {
namespace consensus {

Digest MerkleRoot(std::span<Digest const> leaves)
{
  if (leaves.empty())
  {
    return ZERO_DIGEST;
  }

  std::vector<Digest> level(leaves.begin(), leaves.end());
  while (level.size() > 1)
  {
    if (level.size() % 2 == 1)
    {
      level.push_back(level.back());
    }

    std::vector<Digest> next;
    next.reserve(level.size() / 2);
    for (std::size_t i = 0; i < level.size(); i += 2)
    {
      next.push_back(HashPair(level[i], level[i + 1]));
    }
    level = std::move(next);
  }

  return level.front();
}

}  // namespace consensus
}  // namespace minagree
