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

#include "minagree/incentives/auction.hpp"
#include "minagree/incentives/rewards.hpp"

#include <algorithm>
#include <cmath>

namespace minagree {
namespace incentives {

ClearingResult KthPriceClearing(std::span<Bid const> bids, std::size_t capacity,
                                uint64_t reserve)
{
  std::vector<Bid> eligible;
  eligible.reserve(bids.size());
  for (auto const &bid : bids)
  {
    if (bid.fee >= reserve)
    {
      eligible.push_back(bid);
    }
  }
  std::sort(eligible.begin(), eligible.end(), [](Bid const &a, Bid const &b) {
    if (a.fee != b.fee)
    {
      return a.fee > b.fee;
    }
    return a.tx_hash < b.tx_hash;
  });

  ClearingResult out{};
  std::size_t const n = std::min(capacity, eligible.size());
  for (std::size_t i = 0; i < n; ++i)
  {
    out.included.push_back(eligible[i].tx_hash);
  }
  out.clearing_price = eligible.size() > capacity ? eligible[capacity].fee : reserve;
  return out;
}

double CollusionProfit(double fee, double reserve, double shared_fraction)
{
  if (!std::isfinite(shared_fraction) || shared_fraction < 0.0 || shared_fraction > 1.0)
  {
    throw IncentiveError(IncentiveError::Code::INVALID_FRACTION, "x outside [0, 1]");
  }
  if (!std::isfinite(fee) || !std::isfinite(reserve) || reserve < 0.0 || reserve > fee)
  {
    throw IncentiveError(IncentiveError::Code::INVALID_FRACTION, "need 0 <= eps <= f");
  }
  return shared_fraction * (fee - reserve);
}

}  // namespace incentives
}  // namespace minagree
