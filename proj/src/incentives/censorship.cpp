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

#include "minagree/incentives/censorship.hpp"
#include "minagree/consensus/proposal.hpp"

#include <algorithm>

namespace minagree {
namespace incentives {
namespace {

std::vector<Digest> SortedIds(dag::Dag const &dag, std::span<dag::VertexIndex const> indices)
{
  std::vector<Digest> out;
  for (auto index : indices)
  {
    out.push_back(dag.IdAt(index));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string_view ToString(ConstraintMode mode)
{
  return mode == ConstraintMode::SOFT ? "soft" : "hard";
}

std::optional<ConstraintMode> ParseConstraintMode(std::string_view name)
{
  if (name == "soft")
  {
    return ConstraintMode::SOFT;
  }
  if (name == "hard")
  {
    return ConstraintMode::HARD;
  }
  return std::nullopt;
}

CensorshipOutcome CensorshipCost(dag::Dag const &dag, Digest const &target_tx,
                                 CensorshipContext const &ctx, RewardPolicy const &policy,
                                 ConstraintMode mode)
{
  ValidatePolicy(policy);

  auto const *locations = dag.LocationsOf(target_tx);
  if (locations == nullptr || locations->empty())
  {
    throw IncentiveError(IncentiveError::Code::UNKNOWN_TRANSACTION,
                         "transaction is not listed by any active vertex");
  }

  BitSet excluded;
  for (auto index : *locations)
  {
    excluded.Set(index);
  }

  auto const honest_tips = dag.TipIndices(true);
  auto       allowed     = honest_tips;
  std::erase_if(allowed, [&](dag::VertexIndex tip) {
    return dag.CoverAt(tip).Intersects(excluded);
  });

  BitSet const honest_reach    = dag.CoverUnion(honest_tips);
  BitSet const censoring_reach = dag.CoverUnion(allowed);

  CensorshipOutcome out{};
  out.n_desc_honest    = honest_reach.Count();
  out.n_desc_censoring = censoring_reach.Count();
  out.honest_tips =
      SortedIds(dag, consensus::GreedyMinCoverIndices(dag, honest_reach, honest_tips));
  out.censoring_tips =
      SortedIds(dag, consensus::GreedyMinCoverIndices(dag, censoring_reach, allowed));

  auto const reward = [&](std::size_t n_desc) {
    return ProposerReward(ctx.round_fees, policy.base_block_reward,
                          DeltaScore(n_desc, ctx.n_vertices), policy.shared_fraction);
  };

  uint64_t const honest_reward = reward(out.n_desc_honest);
  if (mode == ConstraintMode::HARD &&
      !CheckHardConstraint(out.n_desc_censoring, ctx.n_vertices, policy.hard_alpha))
  {
    out.feasible = false;
    out.cost     = honest_reward;
  }
  else
  {
    out.cost = honest_reward - reward(out.n_desc_censoring);
  }
  return out;
}

}  // namespace incentives
}  // namespace minagree
