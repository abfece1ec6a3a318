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
#include "minagree/incentives/censorship.hpp"
#include "minagree/sim/config.hpp"

#include "json.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace minagree {
namespace sim {

struct Table1Cell
{
  attachment::StrategyKind strategy{attachment::StrategyKind::RANDOM};
  std::size_t              n_vertices{0};
  double                   mean_proposal_size{0.0};
  double                   stddev_proposal_size{0.0};
  std::size_t              n_blocks{0};
  uint64_t                 seed{0};
};

struct Table1Result
{
  SimConfig               base{};
  std::vector<Table1Cell> rows{};  // strategy-major, in the requested order
  double                  wall_time_seconds{0.0};

  Table1Cell const *Find(attachment::StrategyKind strategy, std::size_t n_vertices) const;
};

/// Settings of the proposal-size experiment: 100 blocks, tips discarded after 10 rounds, honest
/// proposals covering the vertices of the current round, and a six-region latency model.
SimConfig Table1Defaults();

std::vector<attachment::StrategyKind> AllStrategies();

/// Runs every (strategy, n_vertices) cell on `threads` workers (hardware concurrency when zero).
/// Each cell gets its own seed derived from the base seed and the cell index, so the result does
/// not depend on the thread count.
Table1Result Table1Experiment(SimConfig const &base,
                              std::span<attachment::StrategyKind const> strategies,
                              std::span<std::size_t const> sizes, std::size_t threads = 0);

/// Columns: strategy, n_vertices, mean_proposal_size, stddev, n_blocks, seed.
std::string    ToCsv(Table1Result const &result);
nlohmann::json ToJson(Table1Result const &result);

/// Bytes per block interval for the DAG scheme and for compact blocks:
/// (32 * tps * t + 129 * n_vertices, 6 * tps * t).
std::pair<uint64_t, uint64_t> BandwidthEstimate(uint64_t tps, uint64_t block_time,
                                                uint64_t n_vertices);

struct CensorshipRow
{
  std::size_t depth{0};
  std::size_t n_vertices{0};
  std::size_t n_desc_honest{0};
  std::size_t n_desc_censoring{0};
  uint64_t    soft_cost{0};
  bool        hard_feasible{true};
  uint64_t    hard_cost{0};
};

/// Grows a DAG of n_attachers vertices per round, each attaching to tips seen at the start of
/// the round. One vertex per round extends a chain through the previous round's chain vertex and
/// carries a marked transaction, so the vertices depending on deeper targets form nested cones.
/// Prices censoring the target at each requested depth (rounds behind the newest round) in both
/// constraint modes, using the configured reward policy. Rows are sorted by depth.
std::vector<CensorshipRow> CensorshipExperiment(SimConfig const &config,
                                                std::span<std::size_t const> depths,
                                                uint64_t round_fees);

nlohmann::json CensorshipToJson(SimConfig const &config, uint64_t round_fees,
                                std::vector<CensorshipRow> const &rows);

}  // namespace sim
}  // namespace minagree
