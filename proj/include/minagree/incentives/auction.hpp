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
#include <span>
#include <vector>

namespace minagree {
namespace incentives {

struct Bid
{
  Digest   tx_hash{};
  uint64_t fee{0};
};

struct ClearingResult
{
  std::vector<Digest> included{};  // highest fee first, ties by ascending tx hash
  uint64_t            clearing_price{0};
};

/// Uniform-price block space auction: the `capacity` highest bids at or above the reserve are
/// included and all pay the highest excluded bid, or the reserve when nothing is excluded.
ClearingResult KthPriceClearing(std::span<Bid const> bids, std::size_t capacity,
                                uint64_t reserve);

/// Gain of a user and producer who move a transaction of fee f off-chain and post it at the
/// reserve eps, under shared fraction x. Equals x * (f - eps).
double CollusionProfit(double fee, double reserve, double shared_fraction);

}  // namespace incentives
}  // namespace minagree
