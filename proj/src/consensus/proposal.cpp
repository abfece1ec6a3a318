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

#include "minagree/consensus/proposal.hpp"
#include "minagree/consensus/errors.hpp"
#include "minagree/consensus/merkle.hpp"

#include <algorithm>

namespace minagree {
namespace consensus {
namespace {

BitSet ToBitSet(dag::Dag const &dag, dag::VertexIdSet const &ids)
{
  BitSet out(dag.active_count());
  for (auto const &id : ids)
  {
    if (auto index = dag.IndexOf(id))
    {
      out.Set(*index);
    }
  }
  return out;
}

std::vector<Digest> IdsOf(dag::Dag const &dag, std::span<dag::VertexIndex const> indices)
{
  std::vector<Digest> out;
  out.reserve(indices.size());
  for (auto index : indices)
  {
    out.push_back(dag.IdAt(index));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<dag::VertexIndex> IndicesOf(dag::Dag const &dag, std::span<Digest const> ids)
{
  std::vector<dag::VertexIndex> out;
  out.reserve(ids.size());
  for (auto const &id : ids)
  {
    out.push_back(dag.RequireIndex(id));
  }
  return out;
}

}  // namespace

Digest ProposalHash(Proposal const &proposal)
{
  Sha256 hasher;
  hasher.Update("minagree.proposal")
      .UpdateU64(proposal.round)
      .UpdateU64(proposal.proposer.value)
      .UpdateU64(proposal.rank)
      .UpdateU32(static_cast<uint32_t>(proposal.tip_set.size()));
  for (auto const &tip : proposal.tip_set)
  {
    hasher.Update(tip);
  }
  return hasher.Update(proposal.prev_block_hash).Update(proposal.merkle_root).Final();
}

std::vector<dag::VertexIndex> GreedyMinCoverIndices(dag::Dag const &dag, BitSet const &targets,
                                                    std::span<dag::VertexIndex const> tips)
{
  BitSet reachable;
  for (auto tip : tips)
  {
    reachable |= dag.CoverAt(tip);
  }
  if (!targets.IsSubsetOf(reachable))
  {
    throw ConsensusError(ConsensusError::Code::UNCOVERABLE_TARGETS,
                         "targets are not reachable from the candidate tips");
  }

  std::vector<dag::VertexIndex> chosen;
  std::vector<bool>             used(tips.size(), false);
  BitSet                        uncovered = targets;

  while (!uncovered.None())
  {
    std::size_t best      = tips.size();
    std::size_t best_gain = 0;
    for (std::size_t i = 0; i < tips.size(); ++i)
    {
      if (used[i])
      {
        continue;
      }
      std::size_t const gain = dag.CoverAt(tips[i]).IntersectCount(uncovered);
      if (gain > best_gain)
      {
        best      = i;
        best_gain = gain;
      }
    }

    used[best] = true;
    chosen.push_back(tips[best]);
    uncovered.Subtract(dag.CoverAt(tips[best]));
  }

  return chosen;
}

std::vector<Digest> GreedyMinCover(dag::Dag const &dag, dag::VertexIdSet const &targets)
{
  for (auto const &id : targets)
  {
    if (!dag.Contains(id))
    {
      throw dag::DagError(dag::DagError::Code::UNKNOWN_VERTEX, "target is not active");
    }
  }

  auto const tips   = dag.TipIndices(true);
  auto const chosen = GreedyMinCoverIndices(dag, ToBitSet(dag, targets), tips);
  return IdsOf(dag, chosen);
}

AssembledTransactions AssembleTransactions(dag::Dag const &dag, std::span<Digest const> tip_set,
                                           BlockView const &view,
                                           std::optional<std::size_t> max_block_txs)
{
  auto const roots = IndicesOf(dag, tip_set);
  BitSet     cover = dag.CoverUnion(roots);
  cover.Subtract(ToBitSet(dag, view.committed_vertices));

  AssembledTransactions out{};
  cover.ForEach([&](std::size_t index) {
    out.covered_vertices.push_back(dag.IdAt(static_cast<dag::VertexIndex>(index)));
  });
  std::sort(out.covered_vertices.begin(), out.covered_vertices.end());

  for (auto const &tx : dag.OrderedTransactions(cover))
  {
    if (view.included_txs.count(tx) != 0)
    {
      continue;
    }
    if (max_block_txs && out.tx_list.size() >= *max_block_txs)
    {
      out.carried_over.push_back(tx);
    }
    else
    {
      out.tx_list.push_back(tx);
    }
  }

  return out;
}

Proposal MakeProposal(dag::Dag const &dag, RoundContext const &ctx, NodeId proposer,
                      Digest const &prev_block_hash, CoveragePolicy const &policy,
                      BlockView const &view)
{
  std::size_t const rank = RankOf(ctx, proposer);
  if (rank >= ctx.proposer_ranking.size())
  {
    throw ConsensusError(ConsensusError::Code::UNKNOWN_PROPOSER, "proposer is not a staker");
  }
  if (dag.active_count() == 0)
  {
    throw ConsensusError(ConsensusError::Code::EMPTY_DAG, "no active vertices");
  }

  Proposal proposal{};
  proposal.round           = ctx.round;
  proposal.proposer        = proposer;
  proposal.rank            = rank;
  proposal.prev_block_hash = prev_block_hash;
  proposal.signature       = dag::PlaceholderSignature(proposer, ctx.round);

  BitSet const committed = ToBitSet(dag, view.committed_vertices);

  if (policy.kind != PolicyKind::EMPTY)
  {
    auto tips = dag.TipIndices(true);

    BitSet targets;
    if (view.targets)
    {
      targets = ToBitSet(dag, *view.targets);
    }
    else
    {
      targets = dag.CoverUnion(tips);
    }
    targets.Subtract(committed);

    if (policy.kind == PolicyKind::CENSORING)
    {
      BitSet excluded = ToBitSet(dag, policy.excluded_vertices);
      for (auto const &tx : policy.censored_txs)
      {
        if (auto const *locations = dag.LocationsOf(tx))
        {
          for (auto index : *locations)
          {
            excluded.Set(index);
          }
        }
      }

      std::erase_if(tips, [&](dag::VertexIndex tip) {
        return dag.CoverAt(tip).Intersects(excluded);
      });
      targets &= dag.CoverUnion(tips);
    }

    auto const chosen  = GreedyMinCoverIndices(dag, targets, tips);
    proposal.tip_set   = IdsOf(dag, chosen);
    BitSet fresh       = dag.CoverUnion(chosen);
    fresh.Subtract(committed);
    proposal.n_descendants = fresh.Count();
  }

  proposal.n_vertices = view.n_vertices != 0 ? view.n_vertices : ctx.attachers.size();
  if (proposal.n_vertices != 0)
  {
    proposal.delta = std::min(1.0, static_cast<double>(proposal.n_descendants) /
                                       static_cast<double>(proposal.n_vertices));
  }

  auto const assembled = AssembleTransactions(dag, proposal.tip_set, view, policy.max_block_txs);
  proposal.merkle_root = MerkleRoot(assembled.tx_list);

  return proposal;
}

}  // namespace consensus
}  // namespace minagree
