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
#include "minagree/incentives/rewards.hpp"
#include "minagree/sim/config.hpp"

#include "json.hpp"

#include <cstdint>
#include <vector>

namespace minagree {
namespace sim {

struct RoundRecord
{
  uint64_t    round{0};
  NodeId      producer{};
  Digest      block_hash{};
  Digest      prev_block_hash{};
  Digest      merkle_root{};
  uint64_t    finalized_round{0};  // round in which the block became final, 0 if still pending
  std::size_t proposal_size{0};  // tips in the notarised proposal
  std::size_t n_descendants{0};
  std::size_t n_vertices{0};
  double      delta{0.0};
  uint64_t    fees{0};
  std::size_t tx_count{0};
  std::size_t carried_over{0};
  double      mean_candidates{0.0};  // eligible tips visible to an attacher, on average
};

struct SimulationReport
{
  SimConfig                config{};
  std::vector<RoundRecord> rounds{};

  double      mean_proposal_size{0.0};
  double      stddev_proposal_size{0.0};
  double      mean_delta{0.0};
  std::size_t notarized_count{0};
  uint64_t    finalized_height{0};
  std::size_t finalized_count{0};
  uint64_t    total_fees{0};

  std::size_t txs_injected{0};
  std::size_t txs_included{0};
  std::size_t txs_dropped{0};
  std::size_t txs_pending{0};

  incentives::LedgerAccounts ledger{};

  double wall_time_seconds{0.0};  // not part of the serialised report
};

/// Runs the configured number of rounds. Deterministic for a given configuration.
SimulationReport RunSimulation(SimConfig const &config);

/// Serialised report without wall-clock data, so equal seeds give byte-identical output.
nlohmann::json ToJson(SimulationReport const &report, bool include_rounds = true);

}  // namespace sim
}  // namespace minagree
