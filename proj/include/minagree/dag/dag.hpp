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

#include "minagree/core/bitset.hpp"
#include "minagree/core/digest.hpp"
#include "minagree/dag/vertex.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace minagree {
namespace dag {

class DagError : public std::runtime_error
{
public:
  enum class Code
  {
    UNKNOWN_PARENT,
    UNKNOWN_VERTEX,
    DUPLICATE_COVERAGE,
    DUPLICATE_VERTEX,
    CYCLE_VIOLATION,
    NOT_DOWNWARD_CLOSED,
    INVALID_VERTEX,
  };

  DagError(Code code, std::string const &what)
    : std::runtime_error{what}
    , code_{code}
  {}

  Code code() const
  {
    return code_;
  }

private:
  Code code_;
};

/// Dense position of an active vertex. Positions follow insertion order, so a vertex always sits
/// after its parents. They are invalidated by PruneFinalized.
using VertexIndex = uint32_t;

constexpr VertexIndex BOUNDARY = UINT32_MAX;

using VertexIdSet = std::set<Digest>;

/// Append-only transaction DAG with tip tracking and cached reachability.
///
/// "Cover" follows the ledger's terminology: the cover of a vertex is the vertex itself plus every
/// vertex reachable along parent references, restricted to the active (not yet finalised) region.
/// Each active vertex caches its cover as a bitset over active positions; the cache is rebuilt
/// after pruning. References into the pruned region are kept as boundary markers and count as
/// nothing.
class Dag
{
public:
  Dag();
  explicit Dag(Vertex genesis);

  /// Validates and stores the vertex, updating the tip set. Returns the vertex id.
  Digest AttachVertex(Vertex vertex);

  /// Tip ids in ascending order; stale tips are dropped when eligible_only is set.
  std::vector<Digest> Tips(bool eligible_only) const;

  VertexIdSet CoverSet(std::span<Digest const> roots) const;
  std::size_t CoverCardinality(std::span<Digest const> roots) const;

  /// Flags every eligible tip with (current_round - round) > max_age as ineligible. Returns the
  /// number of tips flagged by this call.
  std::size_t DiscardStaleTips(uint64_t current_round, uint64_t max_age);

  /// Removes a downward-closed set of vertices from the active region.
  void PruneFinalized(VertexIdSet const &finalized_cover);

  /// Canonical order of the transactions covered by roots: past before present, ties by
  /// ascending vertex id, listed order within a vertex. A transaction listed by two vertices in
  /// the cover keeps its first position only.
  std::vector<Digest> OrderedTransactions(std::span<Digest const> roots) const;

  Digest const &genesis_id() const
  {
    return genesis_id_;
  }

  std::size_t active_count() const
  {
    return entries_.size();
  }

  bool Contains(Digest const &id) const;
  bool IsBoundary(Digest const &id) const;
  Vertex const &GetVertex(Digest const &id) const;
  bool IsTip(Digest const &id) const;
  bool IsEligible(Digest const &id) const;

  /// @name Position-level access for the hot paths of attachment and proposal construction.
  /// @{
  std::optional<VertexIndex> IndexOf(Digest const &id) const;
  VertexIndex                RequireIndex(Digest const &id) const;

  Digest const &IdAt(VertexIndex index) const
  {
    return entries_[index].id;
  }

  Vertex const &VertexAt(VertexIndex index) const
  {
    return entries_[index].vertex;
  }

  BitSet const &CoverAt(VertexIndex index) const
  {
    return entries_[index].cover;
  }

  std::array<VertexIndex, 2> const &ParentsAt(VertexIndex index) const
  {
    return entries_[index].parents;
  }

  std::vector<VertexIndex> const &ChildrenAt(VertexIndex index) const
  {
    return entries_[index].children;
  }

  bool IsTipAt(VertexIndex index) const
  {
    return entries_[index].children.empty();
  }

  bool IsEligibleAt(VertexIndex index) const
  {
    return entries_[index].eligible;
  }

  uint64_t RoundAt(VertexIndex index) const
  {
    return entries_[index].vertex.round;
  }

  /// Tip positions ordered by ascending vertex id.
  std::vector<VertexIndex> TipIndices(bool eligible_only) const;

  BitSet      CoverUnion(std::span<VertexIndex const> roots) const;
  std::size_t CoverCardinalityOf(std::span<VertexIndex const> roots) const;

  std::vector<Digest> OrderedTransactions(BitSet const &cover) const;

  /// True when `tx` is listed by some active vertex inside `past`.
  bool IsTransactionCovered(Digest const &tx, BitSet const &past) const;

  /// Positions of the active vertices listing `tx`.
  std::vector<VertexIndex> const *LocationsOf(Digest const &tx) const;
  /// @}

private:
  struct Entry
  {
    Digest                     id{};
    Vertex                     vertex{};
    std::array<VertexIndex, 2> parents{BOUNDARY, BOUNDARY};
    std::vector<VertexIndex>   children{};
    BitSet                     cover{};
    bool                       eligible{true};
  };

  BitSet CoverOfRoots(std::span<Digest const> roots) const;
  void   IndexTransactions(VertexIndex index);

  std::vector<Entry>                                            entries_;
  std::unordered_map<Digest, VertexIndex, DigestHash>           index_;
  std::unordered_map<Digest, uint64_t, DigestHash>              boundary_;  // pruned id -> round
  std::unordered_map<Digest, std::vector<VertexIndex>, DigestHash> tx_locations_;
  Digest                                                        genesis_id_{};
};

}  // namespace dag
}  // namespace minagree
