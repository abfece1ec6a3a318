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
#include "minagree/core/bitset.hpp"
#include "minagree/core/digest.hpp"
#include "minagree/dag/dag.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

namespace minagree {
namespace consensus {

using TxHashSet = std::unordered_set<Digest, DigestHash>;

/// A proposer's candidate for the round's block.
struct Proposal
{
  uint64_t            round{0};
  NodeId              proposer{};
  std::size_t         rank{0};
  std::vector<Digest> tip_set{};  // ascending id
  Digest              prev_block_hash{};
  Digest              merkle_root{};
  Signature           signature{};
  std::size_t         n_descendants{0};  // vertices newly covered by the tip set
  std::size_t         n_vertices{0};     // denominator of delta
  double              delta{0.0};        // n_descendants / n_vertices, clamped to 1
};

Digest ProposalHash(Proposal const &proposal);

/// The part of the active DAG already accounted for by notarised blocks that are not yet
/// finalised, plus an optional restriction of what a proposal has to cover.
struct BlockView
{
  dag::VertexIdSet                committed_vertices{};
  TxHashSet                       included_txs{};
  std::optional<dag::VertexIdSet> targets{};  // every coverable new vertex when unset
  std::size_t                     n_vertices{0};  // attacher count of the round when zero
};

enum class PolicyKind
{
  HONEST,
  CENSORING,
  EMPTY,
};

struct CoveragePolicy
{
  PolicyKind                 kind{PolicyKind::HONEST};
  dag::VertexIdSet           excluded_vertices{};
  std::vector<Digest>        censored_txs{};  // every vertex listing one of these is excluded
  std::optional<std::size_t> max_block_txs{};
};

/// Greedy set cover: repeatedly takes the candidate tip covering most still-uncovered targets,
/// ties broken by the lower vertex id. `tips` must be sorted by ascending id. Throws
/// ConsensusError(UNCOVERABLE_TARGETS) when the candidates cannot cover every target.
std::vector<dag::VertexIndex> GreedyMinCoverIndices(dag::Dag const &dag, BitSet const &targets,
                                                    std::span<dag::VertexIndex const> tips);

/// Greedy cover of `targets` using the eligible tips. Returns tip ids in ascending order.
std::vector<Digest> GreedyMinCover(dag::Dag const &dag, dag::VertexIdSet const &targets);

struct AssembledTransactions
{
  std::vector<Digest> tx_list{};
  std::vector<Digest> carried_over{};
  std::vector<Digest> covered_vertices{};  // newly covered, ascending id
};

/// Canonically ordered transactions of the vertices newly covered by `tip_set`, skipping
/// transactions already included by earlier blocks. Anything past the cap is carried over.
AssembledTransactions AssembleTransactions(dag::Dag const &dag, std::span<Digest const> tip_set,
                                           BlockView const &view,
                                           std::optional<std::size_t> max_block_txs);

Proposal MakeProposal(dag::Dag const &dag, RoundContext const &ctx, NodeId proposer,
                      Digest const &prev_block_hash, CoveragePolicy const &policy,
                      BlockView const &view = {});

}  // namespace consensus
}  // namespace minagree
