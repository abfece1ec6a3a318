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

#include "minagree/incentives/rewards.hpp"

#include <cmath>

namespace minagree {
namespace incentives {
namespace {

constexpr int64_t FRACTION_SCALE = 1000000000;

__extension__ using Wide = unsigned __int128;

bool InUnitRange(Fraction const &f)
{
  return f >= 0 && f <= 1;
}

}  // namespace

Fraction UnitFraction(double value)
{
  if (!std::isfinite(value) || value < 0.0 || value > 1.0)
  {
    throw IncentiveError(IncentiveError::Code::INVALID_FRACTION,
                         "fraction outside [0, 1]: " + std::to_string(value));
  }
  return Fraction{std::llround(value * static_cast<double>(FRACTION_SCALE)), FRACTION_SCALE};
}

uint64_t FloorMul(Fraction const &fraction, uint64_t amount)
{
  if (!InUnitRange(fraction))
  {
    throw IncentiveError(IncentiveError::Code::INVALID_FRACTION, "fraction outside [0, 1]");
  }
  auto const num = static_cast<Wide>(fraction.numerator());
  auto const den = static_cast<Wide>(fraction.denominator());
  return static_cast<uint64_t>(num * amount / den);
}

void ValidatePolicy(RewardPolicy const &policy)
{
  if (!InUnitRange(policy.shared_fraction) || !InUnitRange(policy.hard_alpha) ||
      !InUnitRange(policy.committee_share))
  {
    throw IncentiveError(IncentiveError::Code::INVALID_FRACTION,
                         "reward policy fractions must lie in [0, 1]");
  }
  if (policy.decouple_window == 0)
  {
    throw IncentiveError(IncentiveError::Code::INVALID_POLICY,
                         "decouple window must be at least one round");
  }
}

Fraction DeltaScore(std::size_t n_descendants, std::size_t n_vertices)
{
  if (n_vertices == 0 || n_descendants > n_vertices)
  {
    throw IncentiveError(IncentiveError::Code::INVALID_COUNTS,
                         "need 0 <= n_descendants <= n_vertices and n_vertices > 0");
  }
  return Fraction{static_cast<int64_t>(n_descendants), static_cast<int64_t>(n_vertices)};
}

bool CheckHardConstraint(std::size_t n_descendants, std::size_t n_vertices, Fraction alpha)
{
  if (!InUnitRange(alpha))
  {
    throw IncentiveError(IncentiveError::Code::INVALID_FRACTION, "alpha outside [0, 1]");
  }
  // n_desc >= ceil(alpha * n)  <=>  n_desc * den >= alpha_num * n
  auto const lhs = static_cast<Wide>(n_descendants) *
                   static_cast<Wide>(alpha.denominator());
  auto const rhs = static_cast<Wide>(alpha.numerator()) *
                   static_cast<Wide>(n_vertices);
  return lhs >= rhs;
}

uint64_t ProposerReward(uint64_t fees, uint64_t base_block_reward, Fraction delta,
                        Fraction shared_fraction)
{
  if (!InUnitRange(delta) || !InUnitRange(shared_fraction))
  {
    throw IncentiveError(IncentiveError::Code::INVALID_FRACTION, "fraction outside [0, 1]");
  }
  uint64_t const pot = fees + base_block_reward;
  return FloorMul(delta, FloorMul(Fraction{1} - shared_fraction, pot));
}

RewardLedger::RewardLedger(RewardPolicy policy)
  : policy_{policy}
{
  ValidatePolicy(policy_);
  window_.assign(policy_.decouple_window, 0);
}

void RewardLedger::Pay(NodeId node, uint64_t amount)
{
  if (amount == 0)
  {
    return;
  }
  accounts_.balances[node] += amount;
  accounts_.total_paid += amount;
}

void RewardLedger::Split(std::span<NodeId const> nodes, uint64_t amount, NodeId remainder_to)
{
  if (nodes.empty())
  {
    Pay(remainder_to, amount);
    return;
  }
  uint64_t const each = amount / nodes.size();
  for (auto node : nodes)
  {
    Pay(node, each);
  }
  Pay(remainder_to, amount - each * nodes.size());
}

void RewardLedger::Accrue(RoundOutcome const &outcome)
{
  if (!InUnitRange(outcome.delta))
  {
    throw IncentiveError(IncentiveError::Code::INVALID_FRACTION, "delta outside [0, 1]");
  }

  uint64_t const pot = outcome.fees + policy_.base_block_reward;
  accounts_.fee_pool_per_round.push_back(pot);
  accounts_.total_collected += pot;

  uint64_t const producer_side = FloorMul(Fraction{1} - policy_.shared_fraction, pot);
  uint64_t const shared_side   = pot - producer_side;

  uint64_t const q     = window_.size();
  uint64_t const slice = producer_side / q;
  window_[0] += producer_side - slice * (q - 1);
  for (std::size_t k = 1; k < q; ++k)
  {
    window_[k] += slice;
  }

  uint64_t const due = window_.front();
  window_.erase(window_.begin());
  window_.push_back(0);

  uint64_t const earned    = FloorMul(outcome.delta, due);
  uint64_t const forfeited = due - earned;
  Pay(outcome.producer, earned);

  uint64_t const committee_pot =
      outcome.committee.empty() ? 0 : FloorMul(policy_.committee_share, shared_side);
  Split(outcome.committee, committee_pot, outcome.producer);
  Split(outcome.attachers, shared_side - committee_pot + forfeited, outcome.producer);

  last_producer_ = outcome.producer;
  any_round_     = true;
}

void RewardLedger::Settle()
{
  uint64_t outstanding = 0;
  for (auto &slot : window_)
  {
    outstanding += slot;
    slot = 0;
  }
  if (any_round_)
  {
    Pay(last_producer_, outstanding);
  }
}

LedgerAccounts DistributeRewards(std::span<RoundOutcome const> history,
                                 RewardPolicy const &policy)
{
  RewardLedger ledger{policy};
  for (auto const &outcome : history)
  {
    ledger.Accrue(outcome);
  }
  ledger.Settle();
  return ledger.accounts();
}

}  // namespace incentives
}  // namespace minagree
