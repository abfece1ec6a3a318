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
#include "minagree/dag/dag.hpp"
#include "minagree/incentives/rewards.hpp"

#include <cstdint>
#include <string_view>
#include <optional>
#include <vector>

namespace minagree {
namespace incentives {

enum class ConstraintMode
{
  SOFT,  // censoring only lowers delta
  HARD,  // a proposal below the alpha threshold is invalid and earns nothing
};

std::string_view              ToString(ConstraintMode mode);
std::optional<ConstraintMode> ParseConstraintMode(std::string_view name);

struct CensorshipContext
{
  std::size_t n_vertices{0};  // denominator of delta
  uint64_t    round_fees{0};
};

struct CensorshipOutcome
{
  uint64_t            cost{0};  // reward given up by censoring
  bool                feasible{true};
  std::size_t         n_desc_honest{0};
  std::size_t         n_desc_censoring{0};
  std::vector<Digest> honest_tips{};
  std::vector<Digest> censoring_tips{};
};

/// Compares the best honest proposal with the best proposal that avoids every vertex listing
/// `target_tx`. Throws UNKNOWN_TRANSACTION when no active vertex lists it.
CensorshipOutcome CensorshipCost(dag::Dag const &dag, Digest const &target_tx,
                                 CensorshipContext const &ctx, RewardPolicy const &policy,
                                 ConstraintMode mode);

}  // namespace incentives
}  // namespace minagree
