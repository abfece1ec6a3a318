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
#include "minagree/consensus/errors.hpp"

#include <algorithm>
#include <string_view>
#include <utility>

namespace minagree {
namespace consensus {
namespace {

std::vector<NodeId> SortByDomain(Digest const &seed, std::span<NodeId const> stakers,
                                 std::string_view domain)
{
  std::vector<std::pair<Digest, NodeId>> keyed;
  keyed.reserve(stakers.size());
  for (auto id : stakers)
  {
    keyed.emplace_back(Sha256{}.Update(domain).Update(seed).UpdateU64(id.value).Final(), id);
  }
  std::sort(keyed.begin(), keyed.end());

  std::vector<NodeId> out;
  out.reserve(keyed.size());
  for (auto const &k : keyed)
  {
    out.push_back(k.second);
  }
  return out;
}

}  // namespace

Digest InitialSeed(uint64_t seed)
{
  return Sha256{}.Update("minagree.beacon.genesis").UpdateU64(seed).Final();
}

Digest NextSeed(Digest const &prev_seed, uint64_t round)
{
  return Sha256{}.Update(prev_seed).UpdateU64(round).Final();
}

RoundContext DrawRoles(Digest const &seed, std::span<NodeId const> stakers,
                       std::size_t n_attachers, std::size_t committee_size, uint64_t round)
{
  if (n_attachers > stakers.size() || committee_size > stakers.size())
  {
    throw ConsensusError(ConsensusError::Code::INSUFFICIENT_STAKERS,
                         "role sizes exceed the number of stakers");
  }

  RoundContext ctx{};
  ctx.round            = round;
  ctx.seed             = seed;
  ctx.proposer_ranking = SortByDomain(seed, stakers, "minagree.role.rank");

  ctx.attachers = SortByDomain(seed, stakers, "minagree.role.attach");
  ctx.attachers.resize(n_attachers);

  ctx.committee = SortByDomain(seed, stakers, "minagree.role.committee");
  ctx.committee.resize(committee_size);

  return ctx;
}

std::size_t RankOf(RoundContext const &ctx, NodeId node)
{
  auto it = std::find(ctx.proposer_ranking.begin(), ctx.proposer_ranking.end(), node);
  return static_cast<std::size_t>(it - ctx.proposer_ranking.begin());
}

}  // namespace consensus
}  // namespace minagree
