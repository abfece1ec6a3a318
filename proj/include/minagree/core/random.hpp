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

#include <cstdint>
#include <random>

namespace minagree {

/// splitmix64 finaliser. Used to derive independent sub-seeds and per-link jitter values.
constexpr uint64_t Mix64(uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr uint64_t DeriveSeed(uint64_t base, uint64_t salt)
{
  return Mix64(Mix64(base) ^ Mix64(salt + 0x632BE59BD9B4E019ull));
}

/// Maps 64 random bits onto [0, 1) using the top 53 bits.
constexpr double UnitInterval(uint64_t bits)
{
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Seeded random stream with platform-independent distributions.
///
/// std::mt19937_64 output is fixed by the standard, but the std:: distributions are not, so the
/// draws used by the simulator are implemented here to keep runs reproducible across toolchains.
class RandomStream
{
public:
  explicit RandomStream(uint64_t seed)
    : engine_{seed}
  {}

  uint64_t NextU64()
  {
    return engine_();
  }

  /// Uniform integer in [0, bound). bound must be non-zero.
  uint64_t UniformIndex(uint64_t bound)
  {
    // rejection sampling on the largest multiple of bound
    uint64_t const limit = UINT64_MAX - (UINT64_MAX % bound);
    uint64_t       draw  = engine_();
    while (draw >= limit)
    {
      draw = engine_();
    }
    return draw % bound;
  }

  double UniformReal()
  {
    return UnitInterval(engine_());
  }

  /// Number of failures before the first success, success probability p in (0, 1].
  uint64_t Geometric(double p)
  {
    uint64_t count = 0;
    while (UniformReal() >= p)
    {
      ++count;
    }
    return count;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace minagree
