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

#include "minagree/attachment/strategy.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

namespace minagree {
namespace attachment {
namespace {

using dag::Dag;
using dag::VertexIndex;

/// Dense window of a bitset starting at `first_word`.
struct Residual
{
  std::size_t           first_word{0};
  std::vector<uint64_t> words{};
  std::size_t           count{0};
};

Residual MakeResidual(BitSet const &cover, BitSet const &core)
{
  auto const &cw = cover.words();
  auto const &kw = core.words();

  std::vector<uint64_t> masked(cw.size());
  for (std::size_t i = 0; i < cw.size(); ++i)
  {
    masked[i] = cw[i] & ~(i < kw.size() ? kw[i] : 0);
  }

  std::size_t first = 0;
  while (first < masked.size() && masked[first] == 0)
  {
    ++first;
  }
  std::size_t last = masked.size();
  while (last > first && masked[last - 1] == 0)
  {
    --last;
  }

  Residual r{};
  r.first_word = first;
  r.words.assign(masked.begin() + static_cast<std::ptrdiff_t>(first),
                 masked.begin() + static_cast<std::ptrdiff_t>(last));
  for (auto w : r.words)
  {
    r.count += static_cast<std::size_t>(std::popcount(w));
  }
  return r;
}

std::size_t ResidualUnionCount(Residual const &a, Residual const &b)
{
  std::size_t const a_end = a.first_word + a.words.size();
  std::size_t const b_end = b.first_word + b.words.size();

  // disjoint windows
  if (a_end <= b.first_word || b_end <= a.first_word)
  {
    return a.count + b.count;
  }

  std::size_t const lo    = std::max(a.first_word, b.first_word);
  std::size_t const hi    = std::min(a_end, b_end);
  std::size_t       total = a.count + b.count;
  for (std::size_t w = lo; w < hi; ++w)
  {
    total -= static_cast<std::size_t>(
        std::popcount(a.words[w - a.first_word] & b.words[w - b.first_word]));
  }
  return total;
}

IndexPair RandomPair(std::span<VertexIndex const> candidates, RandomStream &rng)
{
  if (candidates.size() == 1)
  {
    return {candidates[0], candidates[0]};
  }

  auto const first  = rng.UniformIndex(candidates.size());
  auto       second = rng.UniformIndex(candidates.size() - 1);
  if (second >= first)
  {
    ++second;
  }
  return {candidates[first], candidates[second]};
}

IndexPair GreedyPair(Dag const &dag, std::span<VertexIndex const> candidates)
{
  // candidates ascend by id, so strict comparisons keep the lowest id on ties
  std::size_t best        = 0;
  std::size_t best_count  = 0;
  std::size_t second      = candidates.size();
  std::size_t second_best = 0;

  std::vector<std::size_t> counts(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
  {
    counts[i] = dag.CoverAt(candidates[i]).Count();
    if (counts[i] > best_count)
    {
      best       = i;
      best_count = counts[i];
    }
  }

  for (std::size_t i = 0; i < candidates.size(); ++i)
  {
    if (i != best && (second == candidates.size() || counts[i] > second_best))
    {
      second      = i;
      second_best = counts[i];
    }
  }

  if (second == candidates.size())
  {
    return {candidates[best], candidates[best]};
  }
  return {candidates[best], candidates[second]};
}

IndexPair JointCardinalityPair(Dag const &dag, std::span<VertexIndex const> candidates)
{
  if (candidates.size() == 1)
  {
    return {candidates[0], candidates[0]};
  }

  std::vector<std::size_t> counts(candidates.size());
  std::size_t              widest = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i)
  {
    counts[i] = dag.CoverAt(candidates[i]).Count();
    widest    = std::max(widest, counts[i]);
  }

  // Two narrow candidates (less than half the widest cover each) can never beat a pair that
  // includes the widest one, so every pair worth evaluating has a wide member.
  std::vector<bool> wide(candidates.size());
  BitSet            core;
  bool              first = true;
  for (std::size_t i = 0; i < candidates.size(); ++i)
  {
    wide[i] = 2 * counts[i] >= widest;
    if (wide[i])
    {
      if (first)
      {
        core  = dag.CoverAt(candidates[i]);
        first = false;
      }
      else
      {
        core &= dag.CoverAt(candidates[i]);
      }
    }
  }

  // with x wide: |x u y| = |core| + |x' u y'| where c' = c \ core
  std::vector<Residual> residuals;
  residuals.reserve(candidates.size());
  for (auto c : candidates)
  {
    residuals.push_back(MakeResidual(dag.CoverAt(c), core));
  }

  // visit by residual size so the |x'| + |y'| bound can cut the search
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return residuals[a].count > residuals[b].count;
  });

  std::size_t best_value = 0;
  std::size_t best_lo    = candidates.size();
  std::size_t best_hi    = candidates.size();
  bool        found      = false;

  for (std::size_t px = 0; px < order.size(); ++px)
  {
    std::size_t const x = order[px];
    if (!wide[x])
    {
      continue;
    }
    auto const       &rx        = residuals[x];
    std::size_t const top_other = order[0] != x ? order[0] : order[1];
    if (found && rx.count + residuals[top_other].count < best_value)
    {
      break;
    }

    for (std::size_t py = 0; py < order.size(); ++py)
    {
      std::size_t const y = order[py];
      if (y == x || (wide[y] && py < px))
      {
        continue;
      }
      auto const &ry = residuals[y];
      if (found && rx.count + ry.count < best_value)
      {
        break;
      }

      std::size_t const value = ResidualUnionCount(rx, ry);
      std::size_t const lo    = std::min(x, y);
      std::size_t const hi    = std::max(x, y);

      if (!found || value > best_value ||
          (value == best_value && std::pair{lo, hi} < std::pair{best_lo, best_hi}))
      {
        best_value = value;
        best_lo    = lo;
        best_hi    = hi;
        found      = true;
      }
    }
  }

  return {candidates[best_lo], candidates[best_hi]};
}

IndexPair MetropolisPair(Dag const &dag, std::span<VertexIndex const> candidates,
                         AttachmentStrategy const &strategy, RandomStream &rng,
                         std::size_t universe)
{
  double const target = strategy.metropolis_threshold * static_cast<double>(universe);

  for (uint32_t i = 0; i < strategy.metropolis_max_iters; ++i)
  {
    auto const pair = RandomPair(candidates, rng);
    if (static_cast<double>(dag.CoverCardinalityOf(pair)) >= target)
    {
      return pair;
    }
  }

  return RandomPair(candidates, rng);
}

}  // namespace

std::string_view ToString(StrategyKind kind)
{
  switch (kind)
  {
  case StrategyKind::RANDOM:
    return "random";
  case StrategyKind::JOINT_CARDINALITY:
    return "joint_cardinality";
  case StrategyKind::METROPOLIS:
    return "metropolis";
  case StrategyKind::GREEDY:
    return "greedy";
  }
  return "unknown";
}

std::optional<StrategyKind> ParseStrategyKind(std::string_view name)
{
  for (auto kind : {StrategyKind::RANDOM, StrategyKind::JOINT_CARDINALITY,
                    StrategyKind::METROPOLIS, StrategyKind::GREEDY})
  {
    if (ToString(kind) == name)
    {
      return kind;
    }
  }
  return std::nullopt;
}

IndexPair SelectParentIndices(Dag const &dag, std::span<VertexIndex const> candidates,
                              AttachmentStrategy const &strategy, RandomStream &rng,
                              std::size_t universe)
{
  if (candidates.empty())
  {
    throw AttachmentError("no eligible tip to attach to");
  }

  switch (strategy.kind)
  {
  case StrategyKind::RANDOM:
    return RandomPair(candidates, rng);
  case StrategyKind::JOINT_CARDINALITY:
    return JointCardinalityPair(dag, candidates);
  case StrategyKind::METROPOLIS:
    return MetropolisPair(dag, candidates, strategy, rng, universe);
  case StrategyKind::GREEDY:
    return GreedyPair(dag, candidates);
  }

  throw AttachmentError("unknown attachment strategy");
}

ParentPair SelectParents(Dag const &dag, AttachmentStrategy const &strategy, RandomStream &rng)
{
  auto const tips = dag.TipIndices(true);
  auto const pair = SelectParentIndices(dag, tips, strategy, rng, dag.active_count());
  return {dag.IdAt(pair[0]), dag.IdAt(pair[1])};
}

dag::Vertex BuildVertex(Dag const &dag, NodeId attacher, std::span<dag::Transaction const> mempool,
                        ParentPair const &parents, uint64_t round)
{
  BitSet past;
  for (auto const &id : {parents.first, parents.second})
  {
    if (auto index = dag.IndexOf(id))
    {
      past |= dag.CoverAt(*index);
    }
    else if (!dag.IsBoundary(id))
    {
      throw dag::DagError(dag::DagError::Code::UNKNOWN_PARENT, "unknown parent for new vertex");
    }
  }

  dag::Vertex vertex{};
  vertex.parents   = {parents.first, parents.second};
  vertex.attacher  = attacher;
  vertex.round     = round;
  vertex.signature = dag::PlaceholderSignature(attacher, round);

  std::unordered_set<Digest, DigestHash> listed;
  for (auto const &tx : mempool)
  {
    if (!dag.IsTransactionCovered(tx.tx_hash, past) && listed.insert(tx.tx_hash).second)
    {
      vertex.tx_hashes.push_back(tx.tx_hash);
    }
  }

  return vertex;
}

}  // namespace attachment
}  // namespace minagree
