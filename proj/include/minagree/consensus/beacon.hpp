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

#include "minagree/core/digest.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace minagree {
namespace consensus {

/// Beacon value before round 1, derived from the configured 64-bit seed.
Digest InitialSeed(uint64_t seed);

/// Hash-chain beacon: SHA-256(prev_seed || round), round as 8 big-endian bytes.
Digest NextSeed(Digest const &prev_seed, uint64_t round);

struct RoundContext
{
  uint64_t            round{0};
  Digest              seed{};
  std::vector<NodeId> attachers{};         // beacon order, which is also the arrival order
  std::vector<NodeId> proposer_ranking{};  // permutation of the stakers, highest priority first
  std::vector<NodeId> committee{};

  std::size_t n_stakers() const
  {
    return proposer_ranking.size();
  }
};

/// Elects the round's roles from the beacon value. Every staker has equal weight. The three role
/// orderings use separate hash domains so they are independent of each other.
RoundContext DrawRoles(Digest const &seed, std::span<NodeId const> stakers,
                       std::size_t n_attachers, std::size_t committee_size, uint64_t round = 0);

/// Position of `node` in the proposer ranking, or ranking.size() when absent.
std::size_t RankOf(RoundContext const &ctx, NodeId node);

}  // namespace consensus
}  // namespace minagree
