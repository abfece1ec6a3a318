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

#include "minagree/attachment/strategy.hpp"
#include "minagree/consensus/notarization.hpp"
#include "minagree/incentives/rewards.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minagree {
namespace sim {

/// Extra propagation time of each vertex before anyone else can see it, in rounds.
enum class DelayKind
{
  NONE,
  FIXED,    // every vertex waits `delay_rounds`
  UNIFORM,  // uniform in [0, delay_rounds]
};

/// When the attachers of a round attach, relative to each other.
enum class ArrivalMode
{
  STAGGERED,     // evenly spaced through the round, in beacon order
  POISSON,       // independent uniform times within the round
  SIMULTANEOUS,  // all at the start of the round, seeing earlier rounds only
};

/// Which vertices an honest proposal has to cover.
enum class ProposalTargets
{
  UNCOMMITTED,  // everything reachable that no earlier block covers
  ROUND,        // the vertices attached in the current round
};

std::string_view ToString(DelayKind kind);
std::string_view ToString(ArrivalMode mode);
std::string_view ToString(ProposalTargets targets);

struct SimConfig
{
  uint64_t    seed{1};
  std::size_t n_stakers{100};
  std::size_t n_attachers{10};
  std::size_t committee_size{10};
  std::size_t n_proposers{3};
  std::size_t n_blocks{100};

  attachment::AttachmentStrategy strategy{};
  uint64_t                       tip_discard_age{10};

  std::size_t mempool_rate{16};  // transactions created per round
  double      fee_mean{10.0};    // mean of the geometric fee distribution, at least 1

  ArrivalMode arrival{ArrivalMode::STAGGERED};
  DelayKind   delay_model{DelayKind::NONE};
  double      delay_rounds{0.0};
  double      link_jitter{0.0};  // extra per-observer delay, uniform in [0, link_jitter] rounds
  std::size_t n_regions{1};      // stakers are spread over regions by id
  double      region_delay{0.0};  // extra delay between attachers in different regions, in rounds

  consensus::NotarizationMode notarization{consensus::NotarizationMode::RANK};
  double                      competitive_lambda{0.0};
  ProposalTargets             proposal_targets{ProposalTargets::UNCOMMITTED};
  std::optional<std::size_t>  max_block_txs{};
  uint32_t                    carry_retry_limit{3};

  uint64_t base_block_reward{0};
  double   shared_fraction{0.0};
  uint32_t decouple_window{1};
  double   hard_alpha{0.0};
  double   committee_share{0.0};
};

/// Invalid configuration; `path()` names the offending key.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(std::string path, std::string const &message)
    : std::runtime_error{path + ": " + message}
    , path_{std::move(path)}
  {}

  std::string const &path() const
  {
    return path_;
  }

private:
  std::string path_;
};

/// Applies a flat JSON object of settings on top of `base`. Unknown keys are rejected.
SimConfig ApplyJson(SimConfig base, nlohmann::json const &settings);

/// Applies one `key=value` override. The value is read as JSON when it parses, as a string
/// otherwise.
SimConfig ApplyOverride(SimConfig base, std::string_view assignment);

/// Checks ranges and cross-field constraints. Throws ConfigError.
void Validate(SimConfig const &config);

incentives::RewardPolicy MakeRewardPolicy(SimConfig const &config);

nlohmann::json ToJson(SimConfig const &config);

std::vector<std::string> ConfigKeys();

}  // namespace sim
}  // namespace minagree
