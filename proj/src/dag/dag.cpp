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

#include "minagree/dag/dag.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <unordered_set>

namespace minagree {
namespace dag {
namespace {

std::string Short(Digest const &id)
{
  return ToHex(std::span<uint8_t const>{id.data(), 8});
}

}  // namespace

Dag::Dag()
  : Dag(MakeGenesis())
{}

Dag::Dag(Vertex genesis)
{
  if (!genesis.parents.empty())
  {
    throw DagError(DagError::Code::INVALID_VERTEX, "genesis vertex must not have parents");
  }

  Entry entry{};
  entry.id     = ComputeVertexId(genesis);
  entry.vertex = std::move(genesis);
  entry.cover.Set(0);

  genesis_id_ = entry.id;
  index_.emplace(entry.id, 0);
  entries_.push_back(std::move(entry));
  IndexTransactions(0);
}

Digest Dag::AttachVertex(Vertex vertex)
{
  if (vertex.parents.size() != 2)
  {
    throw DagError(DagError::Code::INVALID_VERTEX, "vertex must reference exactly two parents");
  }

  std::array<VertexIndex, 2> parents{BOUNDARY, BOUNDARY};
  for (std::size_t i = 0; i < 2; ++i)
  {
    auto const &parent_id = vertex.parents[i];
    uint64_t    parent_round{0};

    if (auto it = index_.find(parent_id); it != index_.end())
    {
      parents[i]   = it->second;
      parent_round = entries_[it->second].vertex.round;
    }
    else if (auto bt = boundary_.find(parent_id); bt != boundary_.end())
    {
      parent_round = bt->second;
    }
    else
    {
      throw DagError(DagError::Code::UNKNOWN_PARENT, "unknown parent " + Short(parent_id));
    }

    if (vertex.round < parent_round)
    {
      throw DagError(DagError::Code::CYCLE_VIOLATION,
                     "vertex round precedes the round of parent " + Short(parent_id));
    }
  }

  Digest const id = ComputeVertexId(vertex);
  if (index_.count(id) != 0 || boundary_.count(id) != 0)
  {
    throw DagError(DagError::Code::DUPLICATE_VERTEX, "vertex " + Short(id) + " already present");
  }

  BitSet past;
  for (auto p : parents)
  {
    if (p != BOUNDARY)
    {
      past |= entries_[p].cover;
    }
  }

  std::unordered_set<Digest, DigestHash> listed;
  for (auto const &tx : vertex.tx_hashes)
  {
    if (!listed.insert(tx).second || IsTransactionCovered(tx, past))
    {
      throw DagError(DagError::Code::DUPLICATE_COVERAGE,
                     "transaction " + Short(tx) + " is already covered by the vertex's past");
    }
  }

  auto const index = static_cast<VertexIndex>(entries_.size());

  Entry entry{};
  entry.id      = id;
  entry.vertex  = std::move(vertex);
  entry.parents = parents;
  entry.cover   = std::move(past);
  entry.cover.Set(index);

  for (std::size_t i = 0; i < 2; ++i)
  {
    auto const p = parents[i];
    // a duplicate parent only gets one child link
    if (p != BOUNDARY && !(i == 1 && parents[0] == p))
    {
      entries_[p].children.push_back(index);
    }
  }

  index_.emplace(id, index);
  entries_.push_back(std::move(entry));
  IndexTransactions(index);

  return id;
}

std::vector<Digest> Dag::Tips(bool eligible_only) const
{
  std::vector<Digest> out;
  for (auto index : TipIndices(eligible_only))
  {
    out.push_back(entries_[index].id);
  }
  return out;
}

std::vector<VertexIndex> Dag::TipIndices(bool eligible_only) const
{
  std::vector<VertexIndex> out;
  for (VertexIndex i = 0; i < entries_.size(); ++i)
  {
    if (entries_[i].children.empty() && (!eligible_only || entries_[i].eligible))
    {
      out.push_back(i);
    }
  }

  std::sort(out.begin(), out.end(),
            [this](VertexIndex a, VertexIndex b) { return entries_[a].id < entries_[b].id; });
  return out;
}

BitSet Dag::CoverOfRoots(std::span<Digest const> roots) const
{
  BitSet cover;
  for (auto const &root : roots)
  {
    cover |= entries_[RequireIndex(root)].cover;
  }
  return cover;
}

VertexIdSet Dag::CoverSet(std::span<Digest const> roots) const
{
  VertexIdSet out;
  CoverOfRoots(roots).ForEach([&](std::size_t i) { out.insert(entries_[i].id); });
  return out;
}

std::size_t Dag::CoverCardinality(std::span<Digest const> roots) const
{
  return CoverOfRoots(roots).Count();
}

BitSet Dag::CoverUnion(std::span<VertexIndex const> roots) const
{
  BitSet cover;
  for (auto root : roots)
  {
    cover |= entries_[root].cover;
  }
  return cover;
}

std::size_t Dag::CoverCardinalityOf(std::span<VertexIndex const> roots) const
{
  if (roots.size() == 1)
  {
    return entries_[roots[0]].cover.Count();
  }
  if (roots.size() == 2)
  {
    return BitSet::UnionCount(entries_[roots[0]].cover, entries_[roots[1]].cover);
  }
  return CoverUnion(roots).Count();
}

std::size_t Dag::DiscardStaleTips(uint64_t current_round, uint64_t max_age)
{
  if (max_age < 1)
  {
    throw std::invalid_argument("max_age must be at least one round");
  }

  std::size_t discarded = 0;
  for (auto &entry : entries_)
  {
    if (entry.children.empty() && entry.eligible && current_round > entry.vertex.round &&
        current_round - entry.vertex.round > max_age)
    {
      entry.eligible = false;
      ++discarded;
    }
  }
  return discarded;
}

void Dag::PruneFinalized(VertexIdSet const &finalized_cover)
{
  std::vector<bool> remove(entries_.size(), false);
  for (auto const &id : finalized_cover)
  {
    remove[RequireIndex(id)] = true;
  }

  for (VertexIndex i = 0; i < entries_.size(); ++i)
  {
    if (!remove[i])
    {
      continue;
    }
    for (auto p : entries_[i].parents)
    {
      if (p != BOUNDARY && !remove[p])
      {
        throw DagError(DagError::Code::NOT_DOWNWARD_CLOSED,
                       "finalised set omits parent " + Short(entries_[p].id) + " of " +
                           Short(entries_[i].id));
      }
    }
  }

  std::vector<VertexIndex> remap(entries_.size(), BOUNDARY);
  std::vector<Entry>       survivors;
  survivors.reserve(entries_.size() - finalized_cover.size());

  for (VertexIndex i = 0; i < entries_.size(); ++i)
  {
    if (remove[i])
    {
      boundary_.emplace(entries_[i].id, entries_[i].vertex.round);
    }
    else
    {
      remap[i] = static_cast<VertexIndex>(survivors.size());
      survivors.push_back(std::move(entries_[i]));
    }
  }

  entries_ = std::move(survivors);
  index_.clear();
  tx_locations_.clear();

  for (VertexIndex i = 0; i < entries_.size(); ++i)
  {
    auto &entry = entries_[i];
    for (auto &p : entry.parents)
    {
      p = (p == BOUNDARY) ? BOUNDARY : remap[p];
    }
    for (auto &c : entry.children)
    {
      c = remap[c];
    }

    entry.cover = BitSet{};
    for (auto p : entry.parents)
    {
      if (p != BOUNDARY)
      {
        entry.cover |= entries_[p].cover;
      }
    }
    entry.cover.Set(i);

    index_.emplace(entry.id, i);
    IndexTransactions(i);
  }
}

std::vector<Digest> Dag::OrderedTransactions(std::span<Digest const> roots) const
{
  return OrderedTransactions(CoverOfRoots(roots));
}

std::vector<Digest> Dag::OrderedTransactions(BitSet const &cover) const
{
  // Kahn's algorithm over the covered subgraph with a min-heap on vertex id
  std::unordered_map<VertexIndex, uint32_t> pending_parents;
  auto const greater_id = [this](VertexIndex a, VertexIndex b) {
    return entries_[b].id < entries_[a].id;
  };
  std::priority_queue<VertexIndex, std::vector<VertexIndex>, decltype(greater_id)> ready{
      greater_id};

  cover.ForEach([&](std::size_t i) {
    auto const &parents = entries_[i].parents;
    uint32_t    waiting = 0;
    for (std::size_t k = 0; k < 2; ++k)
    {
      auto const p = parents[k];
      if (p != BOUNDARY && !(k == 1 && p == parents[0]) && cover.Test(p))
      {
        ++waiting;
      }
    }
    if (waiting == 0)
    {
      ready.push(static_cast<VertexIndex>(i));
    }
    else
    {
      pending_parents[static_cast<VertexIndex>(i)] = waiting;
    }
  });

  std::vector<Digest>                    out;
  std::unordered_set<Digest, DigestHash> seen;
  while (!ready.empty())
  {
    auto const current = ready.top();
    ready.pop();

    for (auto const &tx : entries_[current].vertex.tx_hashes)
    {
      if (seen.insert(tx).second)
      {
        out.push_back(tx);
      }
    }

    for (auto child : entries_[current].children)
    {
      auto it = pending_parents.find(child);
      if (it != pending_parents.end() && --(it->second) == 0)
      {
        pending_parents.erase(it);
        ready.push(child);
      }
    }
  }

  return out;
}

bool Dag::IsTransactionCovered(Digest const &tx, BitSet const &past) const
{
  auto it = tx_locations_.find(tx);
  if (it == tx_locations_.end())
  {
    return false;
  }
  return std::any_of(it->second.begin(), it->second.end(),
                     [&past](VertexIndex i) { return past.Test(i); });
}

std::vector<VertexIndex> const *Dag::LocationsOf(Digest const &tx) const
{
  auto it = tx_locations_.find(tx);
  return it == tx_locations_.end() ? nullptr : &it->second;
}

bool Dag::Contains(Digest const &id) const
{
  return index_.count(id) != 0;
}

bool Dag::IsBoundary(Digest const &id) const
{
  return boundary_.count(id) != 0;
}

Vertex const &Dag::GetVertex(Digest const &id) const
{
  return entries_[RequireIndex(id)].vertex;
}

bool Dag::IsTip(Digest const &id) const
{
  return entries_[RequireIndex(id)].children.empty();
}

bool Dag::IsEligible(Digest const &id) const
{
  return entries_[RequireIndex(id)].eligible;
}

std::optional<VertexIndex> Dag::IndexOf(Digest const &id) const
{
  auto it = index_.find(id);
  if (it == index_.end())
  {
    return std::nullopt;
  }
  return it->second;
}

VertexIndex Dag::RequireIndex(Digest const &id) const
{
  auto it = index_.find(id);
  if (it == index_.end())
  {
    throw DagError(DagError::Code::UNKNOWN_VERTEX, "unknown vertex " + Short(id));
  }
  return it->second;
}

void Dag::IndexTransactions(VertexIndex index)
{
  for (auto const &tx : entries_[index].vertex.tx_hashes)
  {
    tx_locations_[tx].push_back(index);
  }
}

}  // namespace dag
}  // namespace minagree
