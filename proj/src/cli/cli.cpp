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

#include "minagree/cli/cli.hpp"
#include "minagree/consensus/errors.hpp"
#include "minagree/core/logging.hpp"
#include "minagree/dag/dag.hpp"
#include "minagree/incentives/rewards.hpp"
#include "minagree/sim/config.hpp"
#include "minagree/sim/experiments.hpp"
#include "minagree/sim/simulation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace minagree {
namespace cli {
namespace {

using nlohmann::json;

constexpr char const *LOGGING_NAME = "cli";

struct CommonOptions
{
  std::string              config_path{};
  std::vector<std::string> overrides{};
  std::string              output_path{};
  std::string              format{"json"};
  std::optional<uint64_t>  seed{};
  std::optional<std::size_t> blocks{};
};

/// Raised for problems with the invocation itself, reported with exit code 2.
class UsageError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

void AddCommon(CLI::App &app, CommonOptions &options, bool with_blocks)
{
  app.add_option("--config", options.config_path, "JSON configuration file");
  app.add_option("--set", options.overrides, "override a configuration key (key=value)");
  app.add_option("-o,--output", options.output_path, "write the report to this file");
  app.add_option("--format", options.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", options.seed, "random seed");
  if (with_blocks)
  {
    app.add_option("--blocks", options.blocks, "number of block rounds");
  }
}

sim::SimConfig LoadConfig(sim::SimConfig base, CommonOptions const &options)
{
  if (!options.config_path.empty())
  {
    std::ifstream in{options.config_path};
    if (!in)
    {
      throw UsageError("cannot open config file '" + options.config_path + "'");
    }
    json settings = json::parse(in, nullptr, false);
    if (settings.is_discarded())
    {
      throw UsageError("config file '" + options.config_path + "' is not valid JSON");
    }
    try
    {
      base = sim::ApplyJson(std::move(base), settings);
    }
    catch (sim::ConfigError const &e)
    {
      throw UsageError(options.config_path + ": " + e.what());
    }
  }

  for (auto const &assignment : options.overrides)
  {
    base = sim::ApplyOverride(std::move(base), assignment);
  }
  if (options.seed)
  {
    base.seed = *options.seed;
  }
  if (options.blocks)
  {
    base.n_blocks = *options.blocks;
  }
  return base;
}

void Emit(CommonOptions const &options, std::string const &text, std::ostream &out)
{
  if (options.output_path.empty())
  {
    out << text;
    return;
  }
  std::ofstream file{options.output_path};
  if (!file)
  {
    throw UsageError("cannot write output file '" + options.output_path + "'");
  }
  file << text;
}

std::vector<std::string> SplitList(std::string const &text)
{
  std::vector<std::string> out;
  std::stringstream        stream{text};
  std::string              item;
  while (std::getline(stream, item, ','))
  {
    if (!item.empty())
    {
      out.push_back(item);
    }
  }
  return out;
}

std::vector<std::size_t> ParseSizes(std::string const &flag, std::string const &text)
{
  std::vector<std::size_t> out;
  for (auto const &item : SplitList(text))
  {
    std::size_t consumed = 0;
    unsigned long long value = 0;
    try
    {
      value = std::stoull(item, &consumed);
    }
    catch (std::exception const &)
    {
      consumed = 0;
    }
    if (consumed != item.size() || item.front() == '-')
    {
      throw UsageError(flag + ": '" + item + "' is not a non-negative integer");
    }
    out.push_back(static_cast<std::size_t>(value));
  }
  if (out.empty())
  {
    throw UsageError(flag + ": expected a comma-separated list");
  }
  return out;
}

std::vector<attachment::StrategyKind> ParseStrategies(std::string const &text)
{
  if (text == "all")
  {
    return sim::AllStrategies();
  }
  std::vector<attachment::StrategyKind> out;
  for (auto const &item : SplitList(text))
  {
    auto kind = attachment::ParseStrategyKind(item);
    if (!kind)
    {
      throw UsageError("--strategies: unknown strategy '" + item + "'");
    }
    out.push_back(*kind);
  }
  if (out.empty())
  {
    throw UsageError("--strategies: expected a comma-separated list");
  }
  return out;
}

std::string SimulationCsv(sim::SimulationReport const &report)
{
  std::ostringstream out;
  out << "round,producer,block_hash,proposal_size,n_descendants,n_vertices,delta,fees,tx_count,"
         "carried_over\n";
  json const report_json = sim::ToJson(report);
  for (auto const &row : report_json["rows"])
  {
    out << row["round"] << ',' << row["producer"] << ',' << row["block_hash"].get<std::string>()
        << ',' << row["proposal_size"] << ',' << row["n_descendants"] << ','
        << row["n_vertices"] << ',' << row["delta"] << ',' << row["fees"] << ','
        << row["tx_count"] << ',' << row["carried_over"] << '\n';
  }
  return out.str();
}

std::string CensorshipCsv(std::vector<sim::CensorshipRow> const &rows)
{
  std::ostringstream out;
  out << "depth,n_vertices,n_desc_honest,n_desc_censoring,soft_cost,hard_feasible,hard_cost\n";
  for (auto const &row : rows)
  {
    out << row.depth << ',' << row.n_vertices << ',' << row.n_desc_honest << ','
        << row.n_desc_censoring << ',' << row.soft_cost << ','
        << (row.hard_feasible ? "true" : "false") << ',' << row.hard_cost << '\n';
  }
  return out.str();
}

}  // namespace

int RunCli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"minimal-agreement DAG ledger simulator", "minagree"};
  app.require_subcommand(1);

  CommonOptions simulate_options;
  auto         *simulate = app.add_subcommand("simulate", "run one simulation");
  AddCommon(*simulate, simulate_options, true);

  CommonOptions table1_options;
  std::string   sizes_text{"10,100,1000"};
  std::string   strategies_text{"all"};
  std::size_t   threads = 0;
  auto         *table1  = app.add_subcommand("table1", "mean proposal size per strategy and size");
  AddCommon(*table1, table1_options, true);
  table1->add_option("--sizes", sizes_text, "comma-separated attacher counts");
  table1->add_option("--strategies", strategies_text, "comma-separated strategies or 'all'");
  table1->add_option("--threads", threads, "worker threads, 0 for one per core");

  uint64_t tps        = 0;
  uint64_t t_block    = 0;
  uint64_t n_vertices = 0;
  std::string bandwidth_format{"text"};
  auto *bandwidth = app.add_subcommand("bandwidth", "per-block bandwidth of the DAG scheme");
  bandwidth->add_option("--tps", tps, "transactions per second")->required();
  bandwidth->add_option("--t-block", t_block, "block time in seconds")->required();
  bandwidth->add_option("--n-vertices", n_vertices, "vertices per round")->required();
  bandwidth->add_option("--format", bandwidth_format, "output format")
      ->check(CLI::IsMember({"text", "json"}));

  CommonOptions censorship_options;
  std::string   depths_text{"0,1,2,3,4,5,6,7,8"};
  uint64_t      round_fees = 1000;
  auto         *censorship = app.add_subcommand("censorship", "cost of censoring by target depth");
  AddCommon(*censorship, censorship_options, false);
  censorship->add_option("--depths", depths_text, "comma-separated target depths in rounds");
  censorship->add_option("--fees", round_fees, "fees collected by the censored round");

  try
  {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  }
  catch (CLI::CallForHelp const &)
  {
    out << app.help();
    return EXIT_OK;
  }
  catch (CLI::CallForAllHelp const &)
  {
    out << app.help("", CLI::AppFormatMode::All);
    return EXIT_OK;
  }
  catch (CLI::ParseError const &e)
  {
    err << "minagree: " << e.what() << '\n';
    return EXIT_CONFIG_ERROR;
  }

  try
  {
    if (simulate->parsed())
    {
      auto const config = LoadConfig(sim::SimConfig{}, simulate_options);
      sim::Validate(config);
      auto const report = sim::RunSimulation(config);
      MINAGREE_LOG_INFO(LOGGING_NAME, "simulated ", config.n_blocks, " rounds in ",
                        report.wall_time_seconds, " s");
      Emit(simulate_options,
           simulate_options.format == "csv" ? SimulationCsv(report)
                                            : sim::ToJson(report).dump(2) + "\n",
           out);
    }
    else if (table1->parsed())
    {
      auto const config     = LoadConfig(sim::Table1Defaults(), table1_options);
      auto const sizes      = ParseSizes("--sizes", sizes_text);
      auto const strategies = ParseStrategies(strategies_text);
      sim::Validate(config);
      auto const result = sim::Table1Experiment(config, strategies, sizes, threads);
      MINAGREE_LOG_INFO(LOGGING_NAME, "table1 grid finished in ", result.wall_time_seconds,
                        " s");
      Emit(table1_options,
           table1_options.format == "csv" ? sim::ToCsv(result) : sim::ToJson(result).dump(2) + "\n",
           out);
    }
    else if (bandwidth->parsed())
    {
      auto const [dag_bytes, compact_bytes] = sim::BandwidthEstimate(tps, t_block, n_vertices);
      if (bandwidth_format == "json")
      {
        out << json{{"dag_bytes", dag_bytes}, {"compact_bytes", compact_bytes}}.dump() << '\n';
      }
      else
      {
        out << "dag_bytes=" << dag_bytes << " compact_bytes=" << compact_bytes << '\n';
      }
    }
    else if (censorship->parsed())
    {
      sim::SimConfig base{};
      base.hard_alpha    = 1.0;
      auto const config  = LoadConfig(base, censorship_options);
      auto const depths  = ParseSizes("--depths", depths_text);
      auto const rows    = sim::CensorshipExperiment(config, depths, round_fees);
      Emit(censorship_options,
           censorship_options.format == "csv"
               ? CensorshipCsv(rows)
               : sim::CensorshipToJson(config, round_fees, rows).dump(2) + "\n",
           out);
    }
  }
  catch (UsageError const &e)
  {
    err << "minagree: " << e.what() << '\n';
    return EXIT_CONFIG_ERROR;
  }
  catch (sim::ConfigError const &e)
  {
    err << "minagree: invalid configuration: " << e.what() << '\n';
    return EXIT_CONFIG_ERROR;
  }
  catch (incentives::IncentiveError const &e)
  {
    if (e.code() == incentives::IncentiveError::Code::INVALID_FRACTION ||
        e.code() == incentives::IncentiveError::Code::INVALID_POLICY)
    {
      err << "minagree: invalid configuration: " << e.what() << '\n';
      return EXIT_CONFIG_ERROR;
    }
    err << "minagree: " << e.what() << '\n';
    return EXIT_RUNTIME_ERROR;
  }
  catch (std::exception const &e)
  {
    err << "minagree: simulation failed: " << e.what() << '\n';
    return EXIT_RUNTIME_ERROR;
  }

  return EXIT_OK;
}

}  // namespace cli
}  // namespace minagree
