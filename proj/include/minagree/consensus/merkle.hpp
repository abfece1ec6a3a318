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

#include <span>

namespace minagree {
namespace consensus {

/// Binary SHA-256 Merkle root over the leaves in the given order.
///
/// Leaves are used as-is (they are already transaction hashes). An odd level pairs its last node
/// with itself. The empty list commits to 32 zero bytes and a single leaf is its own root.
Digest MerkleRoot(std::span<Digest const> leaves);

}  // namespace consensus
}  // namespace minagree
