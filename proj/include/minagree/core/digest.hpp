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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace minagree {

/// 32-byte SHA-256 output. Used for transaction hashes, vertex ids, seeds and block hashes.
using Digest = std::array<uint8_t, 32>;

/// Placeholder for a 65-byte recoverable signature.
using Signature = std::array<uint8_t, 65>;

constexpr std::size_t DIGEST_SIZE    = 32;
constexpr std::size_t SIGNATURE_SIZE = 65;

inline constexpr Digest ZERO_DIGEST{};

std::string ToHex(std::span<uint8_t const> bytes);
Digest      DigestFromHex(std::string_view hex);

/// Incremental SHA-256 over a byte stream. Integers are appended big-endian.
class Sha256
{
public:
  Sha256();
  ~Sha256();
  Sha256(Sha256 const &) = delete;
  Sha256 &operator=(Sha256 const &) = delete;

  Sha256 &Update(std::span<uint8_t const> bytes);
  Sha256 &Update(std::string_view text);
  Sha256 &Update(Digest const &digest);
  Sha256 &UpdateU64(uint64_t value);
  Sha256 &UpdateU32(uint32_t value);
  Sha256 &UpdateU8(uint8_t value);

  Digest Final();

private:
  void *ctx_;
};

Digest Sha256Of(std::span<uint8_t const> bytes);

/// H(left || right)
Digest HashPair(Digest const &left, Digest const &right);

/// Strong type for a node (staker) identity. Each identity carries the same stake.
struct NodeId
{
  uint64_t value{0};

  constexpr auto operator<=>(NodeId const &) const = default;
};

struct DigestHash
{
  std::size_t operator()(Digest const &d) const noexcept
  {
    std::size_t out;
    std::memcpy(&out, d.data(), sizeof(out));
    return out;
  }
};

}  // namespace minagree

template <>
struct std::hash<minagree::NodeId>
{
  std::size_t operator()(minagree::NodeId const &id) const noexcept
  {
    return std::hash<uint64_t>{}(id.value);
  }
};
