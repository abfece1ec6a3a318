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

#include "minagree/consensus/beacon.hpp"
#include "minagree/consensus/proposal.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace minagree {
namespace consensus {

enum class NotarizationMode
{
  RANK,         // best-ranked valid proposal wins
  COMPETITIVE,  // highest delta - lambda * rank / n_stakers wins
};

std::string_view                ToString(NotarizationMode mode);
std::optional<NotarizationMode> ParseNotarizationMode(std::string_view name);

struct NotarizedBlock
{
  uint64_t            round{0};
  Proposal            proposal{};
  std::vector<NodeId> signers{};
  Digest              block_hash{};
  std::vector<Digest> tx_list{};
  std::vector<Digest> carried_over{};
  std::vector<Digest> covered_vertices{};
};

/// H(prev_block_hash || merkle_root || round), round as 8 big-endian bytes.
Digest BlockHash(Digest const &prev_block_hash, Digest const &merkle_root, uint64_t round);

double CompetitiveScore(Proposal const &proposal, double lambda, std::size_t n_stakers);

/// Selects the winning proposal and has the committee sign it. Committee members listed in
/// `absent` withhold their signature; a strict majority of the committee is required.
NotarizedBlock NotarizeRound(std::span<Proposal const> proposals, RoundContext const &ctx,
                             NotarizationMode mode, double lambda = 0.0,
                             std::span<NodeId const> absent = {});

}  // namespace consensus
}  // namespace minagree
