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

#include "minagree/core/digest.hpp"

#include <cstdint>
#include <vector>

namespace minagree {
namespace dag {

struct Transaction
{
  Digest   tx_hash{};
  uint64_t fee{0};
  NodeId   sender{};
};

/// A DAG vertex. Every vertex other than genesis references exactly two parents, and lists the
/// transactions that are not already covered by its past.
struct Vertex
{
  std::vector<Digest> parents{};
  NodeId              attacher{};
  uint64_t            round{0};
  std::vector<Digest> tx_hashes{};
  Signature           signature{};
};

/// Content hash over the canonical encoding: parents ascending, attacher, round, tx hashes in
/// listed order. The signature is not part of the identity.
Digest ComputeVertexId(Vertex const &vertex);

/// The unique zero-parent vertex every DAG starts from.
Vertex MakeGenesis();

/// Deterministic 65-byte stand-in for a signature by `signer` in `round`.
Signature PlaceholderSignature(NodeId signer, uint64_t round);

}  // namespace dag
}  // namespace minagree
