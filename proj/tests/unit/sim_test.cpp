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

#include "minagree/consensus/notarization.hpp"
#include "minagree/sim/config.hpp"
#include "minagree/sim/experiments.hpp"
#include "minagree/sim/simulation.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace minagree {
namespace {

using sim::ConfigError;
using sim::SimConfig;

SimConfig SmallConfig(std::size_t blocks)
{
  SimConfig c{};
  c.n_stakers      = 20;
  c.n_attachers    = 8;
  c.committee_size = 5;
  c.n_blocks       = blocks;
  return c;
}

TEST(SimulationTest, FiveRoundTrivialRun)
{
  SimConfig c{};
  c.n_blocks        = 5;
  auto const report = sim::RunSimulation(c);
  ASSERT_EQ(report.rounds.size(), 5u);
  EXPECT_EQ(report.notarized_count, 5u);
  EXPECT_EQ(report.finalized_count, 3u);
  EXPECT_EQ(report.finalized_height, 3u);
  for (auto const &row : report.rounds)
  {
    EXPECT_DOUBLE_EQ(row.delta, 1.0);
  }
}

TEST(SimulationTest, FiveRoundRunMatchesGoldenReport)
{
  std::ifstream in{testing::FixturePath("trivial_5round.json")};
  ASSERT_TRUE(in);
  auto const golden = nlohmann::json::parse(in);

  SimConfig c{};
  c.n_blocks = 5;
  EXPECT_EQ(sim::ToJson(sim::RunSimulation(c)), golden);
}

TEST(SimulationTest, IdenticalInputsGiveIdenticalReports)
{
  auto config = SmallConfig(30);
  config.link_jitter    = 0.2;
  config.strategy.kind  = attachment::StrategyKind::JOINT_CARDINALITY;
  auto const a = sim::ToJson(sim::RunSimulation(config)).dump();
  auto const b = sim::ToJson(sim::RunSimulation(config)).dump();
  EXPECT_EQ(a, b);

  config.seed  = 2;
  auto const c = sim::ToJson(sim::RunSimulation(config)).dump();
  EXPECT_NE(a, c);
}

TEST(SimulationTest, MatchesFrozenBlockHashes)
{
  std::ifstream in{testing::FixturePath("golden_blocks.txt")};
  ASSERT_TRUE(in);
  auto config = SmallConfig(12);
  config.seed       = 7;
  auto const report = sim::RunSimulation(config);

  std::string line;
  std::size_t i = 0;
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '#')
    {
      continue;
    }
    std::istringstream fields{line};
    uint64_t           round = 0;
    std::string        hash;
    fields >> round >> hash;
    ASSERT_LT(i, report.rounds.size());
    EXPECT_EQ(report.rounds[i].round, round);
    EXPECT_EQ(ToHex(report.rounds[i].block_hash), hash) << "round " << round;
    ++i;
  }
  EXPECT_EQ(i, 12u);
}

TEST(SimulationTest, FinalityLagsTwoRounds)
{
  auto const report = sim::RunSimulation(SmallConfig(200));
  EXPECT_EQ(report.finalized_count, 198u);
  EXPECT_EQ(report.finalized_height, 198u);
  EXPECT_EQ(report.notarized_count, 200u);
}

TEST(SimulationTest, TransactionsAreAccountedFor)
{
  for (std::optional<std::size_t> cap : {std::optional<std::size_t>{}, std::optional<std::size_t>{5}})
  {
    auto config          = SmallConfig(60);
    config.max_block_txs = cap;
    config.link_jitter   = 0.3;
    auto const report    = sim::RunSimulation(config);
    EXPECT_GT(report.txs_injected, 0u);
    EXPECT_EQ(report.txs_injected,
              report.txs_included + report.txs_pending + report.txs_dropped);
    if (cap)
    {
      for (auto const &row : report.rounds)
      {
        EXPECT_LE(row.tx_count, *cap);
      }
    }
  }
}

TEST(SimulationTest, LedgerConservesFees)
{
  auto config              = SmallConfig(50);
  config.base_block_reward = 7;
  config.shared_fraction   = 0.4;
  config.decouple_window   = 3;
  config.committee_share   = 0.5;
  auto const report        = sim::RunSimulation(config);

  uint64_t balances = 0;
  for (auto const &[node, amount] : report.ledger.balances)
  {
    balances += amount;
  }
  EXPECT_EQ(report.ledger.total_collected, report.total_fees + 7 * 50);
  EXPECT_EQ(report.ledger.total_paid, report.ledger.total_collected);
  EXPECT_EQ(balances, report.ledger.total_paid);
}

TEST(SimulationTest, EmptyMempoolStillProducesBlocks)
{
  auto config         = SmallConfig(10);
  config.mempool_rate = 0;
  auto const report   = sim::RunSimulation(config);
  EXPECT_EQ(report.notarized_count, 10u);
  EXPECT_EQ(report.txs_injected, 0u);
  EXPECT_EQ(report.total_fees, 0u);
  for (auto const &row : report.rounds)
  {
    EXPECT_EQ(row.tx_count, 0u);
  }
}

TEST(SimulationTest, SynchronousArrivalsFillProposals)
{
  auto config    = SmallConfig(20);
  config.arrival = sim::ArrivalMode::SIMULTANEOUS;
  auto const sync = sim::RunSimulation(config);
  EXPECT_DOUBLE_EQ(sync.mean_proposal_size, 8.0);

  config.arrival = sim::ArrivalMode::STAGGERED;
  auto const sequential = sim::RunSimulation(config);
  EXPECT_DOUBLE_EQ(sequential.mean_proposal_size, 1.0);
}

TEST(SimulationTest, CompetitiveModeRuns)
{
  auto config               = SmallConfig(20);
  config.notarization       = consensus::NotarizationMode::COMPETITIVE;
  config.competitive_lambda = 0.5;
  config.link_jitter        = 0.3;
  auto const report         = sim::RunSimulation(config);
  EXPECT_EQ(report.notarized_count, 20u);
  EXPECT_GT(report.mean_delta, 0.0);
  EXPECT_LE(report.mean_delta, 1.0);
}

TEST(ConfigTest, JsonRoundTrip)
{
  auto config          = SmallConfig(9);
  config.link_jitter   = 0.25;
  config.strategy.kind = attachment::StrategyKind::GREEDY;
  auto const parsed    = sim::ApplyJson(SimConfig{}, sim::ToJson(config));
  EXPECT_EQ(sim::ToJson(parsed), sim::ToJson(config));
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues)
{
  try
  {
    sim::ApplyJson(SimConfig{}, nlohmann::json{{"n_stakerz", 3}});
    FAIL();
  }
  catch (ConfigError const &e)
  {
    EXPECT_EQ(e.path(), "n_stakerz");
  }

  EXPECT_THROW(sim::ApplyJson(SimConfig{}, nlohmann::json{{"strategy", "best"}}), ConfigError);
  EXPECT_THROW(sim::ApplyJson(SimConfig{}, nlohmann::json{{"n_blocks", "many"}}), ConfigError);
  EXPECT_THROW(sim::ApplyJson(SimConfig{}, nlohmann::json::array()), ConfigError);
  EXPECT_THROW(sim::ApplyOverride(SimConfig{}, "seed"), ConfigError);

  auto const c = sim::ApplyOverride(SimConfig{}, "strategy=greedy");
  EXPECT_EQ(c.strategy.kind, attachment::StrategyKind::GREEDY);
  EXPECT_EQ(sim::ApplyOverride(SimConfig{}, "max_block_txs=12").max_block_txs, 12u);
}

TEST(ConfigTest, ValidationNamesTheField)
{
  auto config        = SimConfig{};
  config.n_attachers = config.n_stakers + 1;
  try
  {
    sim::Validate(config);
    FAIL();
  }
  catch (ConfigError const &e)
  {
    EXPECT_EQ(e.path(), "n_attachers");
  }

  config             = SimConfig{};
  config.delay_rounds = 1.0;
  EXPECT_THROW(sim::Validate(config), ConfigError);
  EXPECT_THROW(sim::RunSimulation(config), ConfigError);
}

TEST(ExperimentTest, BandwidthFormulas)
{
  EXPECT_EQ(sim::BandwidthEstimate(1000, 10, 100), std::make_pair(uint64_t{332900}, uint64_t{60000}));
  EXPECT_EQ(sim::BandwidthEstimate(1, 1, 1), std::make_pair(uint64_t{161}, uint64_t{6}));
}

TEST(ExperimentTest, CsvAndJsonAgree)
{
  auto base     = sim::Table1Defaults();
  base.n_blocks = 10;
  std::vector<attachment::StrategyKind> strategies{attachment::StrategyKind::RANDOM,
                                                   attachment::StrategyKind::GREEDY};
  std::vector<std::size_t> sizes{10, 20};
  auto const result = sim::Table1Experiment(base, strategies, sizes, 1);
  ASSERT_EQ(result.rows.size(), 4u);

  auto const csv  = sim::ToCsv(result);
  auto const json = sim::ToJson(result);
  std::istringstream lines{csv};
  std::string        line;
  std::getline(lines, line);
  EXPECT_EQ(line, "strategy,n_vertices,mean_proposal_size,stddev,n_blocks,seed");

  std::size_t i = 0;
  while (std::getline(lines, line))
  {
    std::istringstream cells{line};
    std::string        strategy, n, mean;
    std::getline(cells, strategy, ',');
    std::getline(cells, n, ',');
    std::getline(cells, mean, ',');
    auto const &row = json["rows"][i];
    EXPECT_EQ(row["strategy"], strategy);
    EXPECT_EQ(row["n_vertices"].get<std::size_t>(), std::stoul(n));
    EXPECT_EQ(row["mean_proposal_size"].get<double>(), std::stod(mean));
    ++i;
  }
  EXPECT_EQ(i, 4u);

  auto const *cell = result.Find(attachment::StrategyKind::GREEDY, 20);
  ASSERT_NE(cell, nullptr);
  EXPECT_EQ(cell->n_blocks, 10u);
  EXPECT_EQ(result.Find(attachment::StrategyKind::METROPOLIS, 20), nullptr);
}

TEST(ExperimentTest, ParallelGridIsDeterministic)
{
  auto base     = sim::Table1Defaults();
  base.n_blocks = 8;
  auto const strategies = sim::AllStrategies();
  std::vector<std::size_t> sizes{10, 30};
  auto const serial   = sim::Table1Experiment(base, strategies, sizes, 1);
  auto const parallel = sim::Table1Experiment(base, strategies, sizes, 4);
  EXPECT_EQ(sim::ToCsv(serial), sim::ToCsv(parallel));
}

TEST(ExperimentTest, CensorshipCostsAreMonotone)
{
  SimConfig config{};
  config.hard_alpha = 1.0;
  std::vector<std::size_t> depths{3, 0, 1, 2, 3};
  auto const rows = sim::CensorshipExperiment(config, depths, 1000);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    EXPECT_EQ(rows[i].depth, i);
    EXPECT_FALSE(rows[i].hard_feasible);
    if (i > 0)
    {
      EXPECT_GE(rows[i].soft_cost, rows[i - 1].soft_cost);
    }
  }
  EXPECT_THROW(sim::CensorshipExperiment(config, {}, 1000), ConfigError);
}

}  // namespace
}  // namespace minagree
