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

#include "minagree/dag/vertex.hpp"

#include <algorithm>

namespace minagree {
namespace dag {

Digest ComputeVertexId(Vertex const &vertex)
{
  std::vector<Digest> parents = vertex.parents;
  std::sort(parents.begin(), parents.end());

  Sha256 hasher;
  hasher.Update("minagree.vertex");
  hasher.UpdateU8(static_cast<uint8_t>(parents.size()));
  for (auto const &p : parents)
  {
    hasher.Update(p);
  }
  hasher.UpdateU64(vertex.attacher.value);
  hasher.UpdateU64(vertex.round);
  hasher.UpdateU32(static_cast<uint32_t>(vertex.tx_hashes.size()));
  for (auto const &tx : vertex.tx_hashes)
  {
    hasher.Update(tx);
  }
  return hasher.Final();
}

Vertex MakeGenesis()
{
  return Vertex{};
}

Signature PlaceholderSignature(NodeId signer, uint64_t round)
{
  Digest const first  = Sha256{}.Update("minagree.sig.r").UpdateU64(signer.value).UpdateU64(round).Final();
  Digest const second = Sha256{}.Update("minagree.sig.s").UpdateU64(signer.value).UpdateU64(round).Final();

  Signature sig{};
  std::copy(first.begin(), first.end(), sig.begin());
  std::copy(second.begin(), second.end(), sig.begin() + DIGEST_SIZE);
  sig[SIGNATURE_SIZE - 1] = 27;  // recovery id slot
  return sig;
}

}  // namespace dag
}  // namespace minagree
