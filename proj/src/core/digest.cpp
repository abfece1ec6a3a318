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

#include <openssl/evp.h>

#include <stdexcept>

namespace minagree {
namespace {

EVP_MD_CTX *AsCtx(void *p)
{
  return static_cast<EVP_MD_CTX *>(p);
}

int HexValue(char c)
{
  if (c >= '0' && c <= '9')
  {
    return c - '0';
  }
  if (c >= 'a' && c <= 'f')
  {
    return c - 'a' + 10;
  }
  if (c >= 'A' && c <= 'F')
  {
    return c - 'A' + 10;
  }
  return -1;
}

}  // namespace

std::string ToHex(std::span<uint8_t const> bytes)
{
  static constexpr char DIGITS[] = "0123456789abcdef";

  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes)
  {
    out.push_back(DIGITS[b >> 4]);
    out.push_back(DIGITS[b & 0xF]);
  }
  return out;
}

Digest DigestFromHex(std::string_view hex)
{
  if (hex.size() != DIGEST_SIZE * 2)
  {
    throw std::invalid_argument("digest hex must be 64 characters");
  }

  Digest out{};
  for (std::size_t i = 0; i < DIGEST_SIZE; ++i)
  {
    int const hi = HexValue(hex[2 * i]);
    int const lo = HexValue(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
    {
      throw std::invalid_argument("invalid hex character in digest");
    }
    out[i] = static_cast<uint8_t>((hi << 4) | lo);
  }
  return out;
}

Sha256::Sha256()
  : ctx_{EVP_MD_CTX_new()}
{
  if (ctx_ == nullptr || EVP_DigestInit_ex(AsCtx(ctx_), EVP_sha256(), nullptr) != 1)
  {
    throw std::runtime_error("unable to initialise SHA-256 context");
  }
}

Sha256::~Sha256()
{
  EVP_MD_CTX_free(AsCtx(ctx_));
}

Sha256 &Sha256::Update(std::span<uint8_t const> bytes)
{
  EVP_DigestUpdate(AsCtx(ctx_), bytes.data(), bytes.size());
  return *this;
}

Sha256 &Sha256::Update(std::string_view text)
{
  EVP_DigestUpdate(AsCtx(ctx_), text.data(), text.size());
  return *this;
}

Sha256 &Sha256::Update(Digest const &digest)
{
  return Update(std::span<uint8_t const>{digest});
}

Sha256 &Sha256::UpdateU64(uint64_t value)
{
  std::array<uint8_t, 8> buf{};
  for (int i = 7; i >= 0; --i)
  {
    buf[static_cast<std::size_t>(i)] = static_cast<uint8_t>(value & 0xFF);
    value >>= 8;
  }
  return Update(std::span<uint8_t const>{buf});
}

Sha256 &Sha256::UpdateU32(uint32_t value)
{
  std::array<uint8_t, 4> buf{static_cast<uint8_t>(value >> 24), static_cast<uint8_t>(value >> 16),
                             static_cast<uint8_t>(value >> 8), static_cast<uint8_t>(value)};
  return Update(std::span<uint8_t const>{buf});
}

Sha256 &Sha256::UpdateU8(uint8_t value)
{
  return Update(std::span<uint8_t const>{&value, 1});
}

Digest Sha256::Final()
{
  Digest       out{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(AsCtx(ctx_), out.data(), &len);
  return out;
}

Digest Sha256Of(std::span<uint8_t const> bytes)
{
  return Sha256{}.Update(bytes).Final();
}

Digest HashPair(Digest const &left, Digest const &right)
{
  return Sha256{}.Update(left).Update(right).Final();
}

}  // namespace minagree
