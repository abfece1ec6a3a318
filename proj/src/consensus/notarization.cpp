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
#include "minagree/consensus/errors.hpp"

#include <algorithm>
#include <set>

namespace minagree {
namespace consensus {

std::string_view ToString(NotarizationMode mode)
{
  return mode == NotarizationMode::RANK ? "rank" : "competitive";
}

std::optional<NotarizationMode> ParseNotarizationMode(std::string_view name)
{
  if (name == "rank")
  {
    return NotarizationMode::RANK;
  }
  if (name == "competitive")
  {
    return NotarizationMode::COMPETITIVE;
  }
  return std::nullopt;
}

Digest BlockHash(Digest const &prev_block_hash, Digest const &merkle_root, uint64_t round)
{
  return Sha256{}.Update(prev_block_hash).Update(merkle_root).UpdateU64(round).Final();
}

double CompetitiveScore(Proposal const &proposal, double lambda, std::size_t n_stakers)
{
  return proposal.delta -
         lambda * static_cast<double>(proposal.rank) / static_cast<double>(n_stakers);
}

NotarizedBlock NotarizeRound(std::span<Proposal const> proposals, RoundContext const &ctx,
                             NotarizationMode mode, double lambda, std::span<NodeId const> absent)
{
  if (proposals.empty())
  {
    throw ConsensusError(ConsensusError::Code::NO_PROPOSALS, "no proposals for the round");
  }

  std::set<NodeId> seen;
  for (auto const &p : proposals)
  {
    if (RankOf(ctx, p.proposer) != p.rank || p.rank >= ctx.n_stakers())
    {
      throw ConsensusError(ConsensusError::Code::UNKNOWN_PROPOSER,
                           "proposal rank does not match the beacon ranking");
    }
    if (!seen.insert(p.proposer).second)
    {
      throw ConsensusError(ConsensusError::Code::DUPLICATE_PROPOSER,
                           "proposer submitted twice in one round");
    }
  }

  std::vector<NodeId> signers;
  for (auto member : ctx.committee)
  {
    if (std::find(absent.begin(), absent.end(), member) == absent.end())
    {
      signers.push_back(member);
    }
  }
  if (signers.size() * 2 <= ctx.committee.size())
  {
    throw ConsensusError(ConsensusError::Code::NO_QUORUM, "committee quorum not reached");
  }

  auto const better = [&](Proposal const &a, Proposal const &b) {
    if (mode == NotarizationMode::COMPETITIVE)
    {
      double const sa = CompetitiveScore(a, lambda, ctx.n_stakers());
      double const sb = CompetitiveScore(b, lambda, ctx.n_stakers());
      if (sa != sb)
      {
        return sa > sb;
      }
    }
    if (a.rank != b.rank)
    {
      return a.rank < b.rank;
    }
    return ProposalHash(a) < ProposalHash(b);
  };

  Proposal const *winner = &proposals.front();
  for (auto const &p : proposals)
  {
    if (better(p, *winner))
    {
      winner = &p;
    }
  }

  NotarizedBlock block{};
  block.round      = ctx.round;
  block.proposal   = *winner;
  block.signers    = std::move(signers);
  block.block_hash = BlockHash(winner->prev_block_hash, winner->merkle_root, ctx.round);
  return block;
}

}  // namespace consensus
}  // namespace minagree
