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

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace minagree {

/// Growable bitset. A cleared bit past the end is implicit, so sets of different lengths combine
/// without resizing the shorter operand.
class BitSet
{
public:
  BitSet() = default;

  explicit BitSet(std::size_t bits)
    : words_((bits + 63) / 64, 0)
  {}

  void Set(std::size_t bit)
  {
    std::size_t const w = bit / 64;
    if (w >= words_.size())
    {
      words_.resize(w + 1, 0);
    }
    words_[w] |= (uint64_t{1} << (bit % 64));
  }

  void Reset(std::size_t bit)
  {
    std::size_t const w = bit / 64;
    if (w < words_.size())
    {
      words_[w] &= ~(uint64_t{1} << (bit % 64));
    }
  }

  bool Test(std::size_t bit) const
  {
    std::size_t const w = bit / 64;
    return w < words_.size() && ((words_[w] >> (bit % 64)) & 1u) != 0;
  }

  std::size_t Count() const
  {
    std::size_t total = 0;
    for (auto w : words_)
    {
      total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
  }

  bool None() const
  {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
  }

  BitSet &operator|=(BitSet const &other)
  {
    if (other.words_.size() > words_.size())
    {
      words_.resize(other.words_.size(), 0);
    }
    for (std::size_t i = 0; i < other.words_.size(); ++i)
    {
      words_[i] |= other.words_[i];
    }
    return *this;
  }

  BitSet &operator&=(BitSet const &other)
  {
    std::size_t const common = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < common; ++i)
    {
      words_[i] &= other.words_[i];
    }
    std::fill(words_.begin() + static_cast<std::ptrdiff_t>(common), words_.end(), 0);
    return *this;
  }

  /// this &= ~other
  BitSet &Subtract(BitSet const &other)
  {
    std::size_t const common = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < common; ++i)
    {
      words_[i] &= ~other.words_[i];
    }
    return *this;
  }

  bool Intersects(BitSet const &other) const
  {
    std::size_t const common = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < common; ++i)
    {
      if ((words_[i] & other.words_[i]) != 0)
      {
        return true;
      }
    }
    return false;
  }

  /// True when every bit of this is also set in other.
  bool IsSubsetOf(BitSet const &other) const
  {
    for (std::size_t i = 0; i < words_.size(); ++i)
    {
      uint64_t const o = i < other.words_.size() ? other.words_[i] : 0;
      if ((words_[i] & ~o) != 0)
      {
        return false;
      }
    }
    return true;
  }

  std::size_t IntersectCount(BitSet const &other) const
  {
    std::size_t const common = std::min(words_.size(), other.words_.size());
    std::size_t       total  = 0;
    for (std::size_t i = 0; i < common; ++i)
    {
      total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    }
    return total;
  }

  static std::size_t UnionCount(BitSet const &a, BitSet const &b)
  {
    auto const &longer  = a.words_.size() >= b.words_.size() ? a.words_ : b.words_;
    auto const &shorter = a.words_.size() >= b.words_.size() ? b.words_ : a.words_;

    std::size_t total = 0;
    std::size_t i     = 0;
    for (; i < shorter.size(); ++i)
    {
      total += static_cast<std::size_t>(std::popcount(longer[i] | shorter[i]));
    }
    for (; i < longer.size(); ++i)
    {
      total += static_cast<std::size_t>(std::popcount(longer[i]));
    }
    return total;
  }

  template <typename Fn>
  void ForEach(Fn &&fn) const
  {
    for (std::size_t w = 0; w < words_.size(); ++w)
    {
      uint64_t word = words_[w];
      while (word != 0)
      {
        auto const bit = static_cast<std::size_t>(std::countr_zero(word));
        fn(w * 64 + bit);
        word &= word - 1;
      }
    }
  }

  std::vector<uint64_t> const &words() const
  {
    return words_;
  }

  bool operator==(BitSet const &other) const
  {
    std::size_t const n = std::max(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i)
    {
      uint64_t const a = i < words_.size() ? words_[i] : 0;
      uint64_t const b = i < other.words_.size() ? other.words_[i] : 0;
      if (a != b)
      {
        return false;
      }
    }
    return true;
  }

private:
  std::vector<uint64_t> words_;
};

}  // namespace minagree
