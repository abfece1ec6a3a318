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

#include "minagree/core/random.hpp"
#include "minagree/dag/dag.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>

namespace minagree {
namespace attachment {

enum class StrategyKind
{
  RANDOM,
  JOINT_CARDINALITY,
  METROPOLIS,
  GREEDY,
};

std::string_view            ToString(StrategyKind kind);
std::optional<StrategyKind> ParseStrategyKind(std::string_view name);

struct AttachmentStrategy
{
  StrategyKind kind{StrategyKind::RANDOM};
  double       metropolis_threshold{0.5};  // fraction of the active vertices, in (0, 1]
  uint32_t     metropolis_max_iters{32};   // Random fallback once exhausted
};

class AttachmentError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

using IndexPair  = std::array<dag::VertexIndex, 2>;
using ParentPair = std::pair<Digest, Digest>;

/// Picks two parents among `candidates` (eligible tip positions, ascending vertex id).
///
/// `universe` is the number of active vertices the attacher knows about; Metropolis measures its
/// acceptance threshold against it. Throws AttachmentError when there is no candidate.
IndexPair SelectParentIndices(dag::Dag const &dag, std::span<dag::VertexIndex const> candidates,
                              AttachmentStrategy const &strategy, RandomStream &rng,
                              std::size_t universe);

/// Selection over the eligible tips of the whole DAG.
ParentPair SelectParents(dag::Dag const &dag, AttachmentStrategy const &strategy,
                         RandomStream &rng);

/// Vertex listing every mempool transaction not already covered by the parents' past, in mempool
/// order. Throws DagError(UNKNOWN_PARENT) for a parent outside the active region.
dag::Vertex BuildVertex(dag::Dag const &dag, NodeId attacher,
                        std::span<dag::Transaction const> mempool, ParentPair const &parents,
                        uint64_t round);

}  // namespace attachment
}  // namespace minagree
