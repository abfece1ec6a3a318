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

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minagree {
namespace incentives {

using Fraction = boost::rational<int64_t>;

class IncentiveError : public std::runtime_error
{
public:
  enum class Code
  {
    INVALID_COUNTS,
    INVALID_FRACTION,
    INVALID_POLICY,
    UNKNOWN_TRANSACTION,
  };

  IncentiveError(Code code, std::string const &what)
    : std::runtime_error{what}
    , code_{code}
  {}

  Code code() const
  {
    return code_;
  }

private:
  Code code_;
};

/// Nearest fraction with denominator 10^9. Throws INVALID_FRACTION outside [0, 1].
Fraction UnitFraction(double value);

/// floor(fraction * amount) for a fraction in [0, 1].
uint64_t FloorMul(Fraction const &fraction, uint64_t amount);

struct RewardPolicy
{
  uint64_t base_block_reward{0};
  Fraction shared_fraction{0};  // x: portion of the pot paid outside the block producer
  uint32_t decouple_window{1};  // Q: rounds over which a block's producer share is spread
  Fraction hard_alpha{0};       // minimum coverage when the hard constraint applies
  Fraction committee_share{0};  // part of the shared portion paid to the committee
};

void ValidatePolicy(RewardPolicy const &policy);

Fraction DeltaScore(std::size_t n_descendants, std::size_t n_vertices);

/// n_descendants >= ceil(alpha * n_vertices)
bool CheckHardConstraint(std::size_t n_descendants, std::size_t n_vertices, Fraction alpha);

/// floor(delta * floor((1 - x) * (fees + base))): the producer keeps the delta part of its side
/// of the pot; the rest is forfeited to the attachers.
uint64_t ProposerReward(uint64_t fees, uint64_t base_block_reward, Fraction delta,
                        Fraction shared_fraction);

struct RoundOutcome
{
  uint64_t            round{0};
  uint64_t            fees{0};
  NodeId              producer{};
  std::vector<NodeId> attachers{};
  std::vector<NodeId> committee{};
  Fraction            delta{1};
};

struct LedgerAccounts
{
  std::map<NodeId, uint64_t> balances{};
  std::vector<uint64_t>      fee_pool_per_round{};  // fees + base reward collected each round
  uint64_t                   total_collected{0};
  uint64_t                   total_paid{0};
};

/// Streaming reward distribution. Every token collected is paid out exactly once: rounding
/// remainders go to the round's producer, and Settle() pays the producer shares still scheduled
/// for future rounds to the last producer.
class RewardLedger
{
public:
  explicit RewardLedger(RewardPolicy policy);

  void Accrue(RoundOutcome const &outcome);
  void Settle();

  LedgerAccounts const &accounts() const
  {
    return accounts_;
  }

private:
  void Pay(NodeId node, uint64_t amount);
  void Split(std::span<NodeId const> nodes, uint64_t amount, NodeId remainder_to);

  RewardPolicy          policy_;
  LedgerAccounts        accounts_{};
  std::vector<uint64_t> window_;  // window_[k]: producer share scheduled k rounds ahead
  NodeId                last_producer_{};
  bool                  any_round_{false};
};

LedgerAccounts DistributeRewards(std::span<RoundOutcome const> history,
                                 RewardPolicy const &policy);

}  // namespace incentives
}  // namespace minagree
