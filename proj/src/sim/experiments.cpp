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

#include "minagree/sim/experiments.hpp"
#include "minagree/core/random.hpp"
#include "minagree/dag/dag.hpp"
#include "minagree/sim/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <array>
#include <charconv>
#include <sstream>
#include <thread>

namespace minagree {
namespace sim {
namespace {

/// Shortest text that reads back to the same double, matching the JSON rendering.
std::string ShortestDouble(double value)
{
  std::array<char, 32> buffer{};
  auto const result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

}  // namespace

Table1Cell const *Table1Result::Find(attachment::StrategyKind strategy,
                                     std::size_t n_vertices) const
{
  for (auto const &row : rows)
  {
    if (row.strategy == strategy && row.n_vertices == n_vertices)
    {
      return &row;
    }
  }
  return nullptr;
}

SimConfig Table1Defaults()
{
  SimConfig config{};
  config.n_blocks         = 100;
  config.tip_discard_age  = 10;
  config.proposal_targets = ProposalTargets::ROUND;
  // six regions, 0.1 round between them, 0.05 round of per-link jitter
  config.n_regions    = 6;
  config.region_delay = 0.1;
  config.link_jitter  = 0.05;
  return config;
}

std::vector<attachment::StrategyKind> AllStrategies()
{
  return {attachment::StrategyKind::RANDOM, attachment::StrategyKind::JOINT_CARDINALITY,
          attachment::StrategyKind::GREEDY, attachment::StrategyKind::METROPOLIS};
}

Table1Result Table1Experiment(SimConfig const &base,
                              std::span<attachment::StrategyKind const> strategies,
                              std::span<std::size_t const> sizes, std::size_t threads)
{
  auto const start = std::chrono::steady_clock::now();

  Table1Result result{};
  result.base = base;

  std::vector<SimConfig> configs;
  for (auto strategy : strategies)
  {
    for (auto size : sizes)
    {
      SimConfig cell      = base;
      cell.strategy.kind  = strategy;
      cell.n_attachers    = size;
      cell.n_stakers      = std::max(base.n_stakers, size);
      cell.committee_size = std::min(base.committee_size, cell.n_stakers);
      cell.seed           = DeriveSeed(base.seed, configs.size());
      Validate(cell);
      configs.push_back(cell);

      Table1Cell row{};
      row.strategy   = strategy;
      row.n_vertices = size;
      row.n_blocks   = cell.n_blocks;
      row.seed       = cell.seed;
      result.rows.push_back(row);
    }
  }

  if (threads == 0)
  {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, configs.size());

  // largest cells first so the workers finish together
  std::vector<std::size_t> queue(configs.size());
  for (std::size_t i = 0; i < queue.size(); ++i)
  {
    queue[i] = i;
  }
  std::stable_sort(queue.begin(), queue.end(), [&](std::size_t a, std::size_t b) {
    return configs[a].n_attachers > configs[b].n_attachers;
  });

  std::atomic<std::size_t> next{0};
  auto const               worker = [&] {
    for (std::size_t k = next++; k < queue.size(); k = next++)
    {
      std::size_t const i      = queue[k];
      auto const        report = RunSimulation(configs[i]);
      result.rows[i].mean_proposal_size   = report.mean_proposal_size;
      result.rows[i].stddev_proposal_size = report.stddev_proposal_size;
    }
  };

  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t)
  {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &t : pool)
  {
    t.join();
  }

  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string ToCsv(Table1Result const &result)
{
  std::ostringstream out;
  out << "strategy,n_vertices,mean_proposal_size,stddev,n_blocks,seed\n";
  for (auto const &row : result.rows)
  {
    out << attachment::ToString(row.strategy) << ',' << row.n_vertices << ','
        << ShortestDouble(row.mean_proposal_size) << ',' << ShortestDouble(row.stddev_proposal_size)
        << ',' << row.n_blocks << ',' << row.seed << '\n';
  }
  return out.str();
}

nlohmann::json ToJson(Table1Result const &result)
{
  nlohmann::json rows = nlohmann::json::array();
  for (auto const &row : result.rows)
  {
    rows.push_back({
        {"strategy", std::string{attachment::ToString(row.strategy)}},
        {"n_vertices", row.n_vertices},
        {"mean_proposal_size", row.mean_proposal_size},
        {"stddev", row.stddev_proposal_size},
        {"n_blocks", row.n_blocks},
        {"seed", row.seed},
    });
  }

  nlohmann::json aggregates = nlohmann::json::object();
  for (auto const &row : result.rows)
  {
    aggregates[std::string{attachment::ToString(row.strategy)}][std::to_string(row.n_vertices)] =
        row.mean_proposal_size;
  }

  return {{"config", ToJson(result.base)}, {"rows", rows}, {"aggregates", aggregates}};
}

std::pair<uint64_t, uint64_t> BandwidthEstimate(uint64_t tps, uint64_t block_time,
                                                uint64_t n_vertices)
{
  return {32 * tps * block_time + 129 * n_vertices, 6 * tps * block_time};
}

std::vector<CensorshipRow> CensorshipExperiment(SimConfig const &config,
                                                std::span<std::size_t const> depths,
                                                uint64_t round_fees)
{
  Validate(config);
  if (depths.empty())
  {
    throw ConfigError("depths", "need at least one depth");
  }

  std::vector<std::size_t> sorted(depths.begin(), depths.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  RandomStream rng{DeriveSeed(config.seed, 0x63656e)};
  dag::Dag     dag;

  std::size_t const   rounds = sorted.back() + 1;
  std::vector<Digest> chain_txs;
  Digest              chain_tip = dag.genesis_id();

  for (uint64_t round = 1; round <= rounds; ++round)
  {
    auto const tips = dag.Tips(true);
    auto const pick = [&] { return tips[rng.UniformIndex(tips.size())]; };

    Digest const tx =
        Sha256{}.Update("minagree.censorship.tx").UpdateU64(config.seed).UpdateU64(round).Final();
    chain_txs.push_back(tx);

    std::vector<dag::Vertex> batch;
    for (std::size_t k = 0; k < config.n_attachers; ++k)
    {
      dag::Vertex v{};
      v.parents   = {k == 0 ? chain_tip : pick(), pick()};
      v.attacher  = NodeId{k + 1};
      v.round     = round;
      v.signature = dag::PlaceholderSignature(v.attacher, round);
      if (k == 0)
      {
        v.tx_hashes = {tx};
      }
      batch.push_back(v);
    }

    chain_tip = dag.AttachVertex(batch.front());
    for (std::size_t k = 1; k < batch.size(); ++k)
    {
      dag.AttachVertex(batch[k]);
    }
  }

  auto const policy = MakeRewardPolicy(config);

  incentives::CensorshipContext ctx{};
  ctx.n_vertices = dag.active_count();
  ctx.round_fees = round_fees;

  std::vector<CensorshipRow> rows;
  for (auto depth : sorted)
  {
    auto const &target = chain_txs[chain_txs.size() - 1 - depth];
    auto const  soft   = incentives::CensorshipCost(dag, target, ctx, policy,
                                                    incentives::ConstraintMode::SOFT);
    auto const  hard   = incentives::CensorshipCost(dag, target, ctx, policy,
                                                    incentives::ConstraintMode::HARD);

    CensorshipRow row{};
    row.depth            = depth;
    row.n_vertices       = ctx.n_vertices;
    row.n_desc_honest    = soft.n_desc_honest;
    row.n_desc_censoring = soft.n_desc_censoring;
    row.soft_cost        = soft.cost;
    row.hard_feasible    = hard.feasible;
    row.hard_cost        = hard.cost;
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json CensorshipToJson(SimConfig const &config, uint64_t round_fees,
                                std::vector<CensorshipRow> const &rows)
{
  nlohmann::json out_rows = nlohmann::json::array();
  for (auto const &row : rows)
  {
    out_rows.push_back({
        {"depth", row.depth},
        {"n_vertices", row.n_vertices},
        {"n_desc_honest", row.n_desc_honest},
        {"n_desc_censoring", row.n_desc_censoring},
        {"soft_cost", row.soft_cost},
        {"hard_feasible", row.hard_feasible},
        {"hard_cost", row.hard_cost},
    });
  }

  nlohmann::json config_json  = ToJson(config);
  config_json["round_fees"]   = round_fees;
  return {{"config", config_json}, {"rows", out_rows}};
}

}  // namespace sim
}  // namespace minagree
