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

#include "minagree/sim/simulation.hpp"
#include "minagree/attachment/strategy.hpp"
#include "minagree/consensus/beacon.hpp"
#include "minagree/consensus/chain.hpp"
#include "minagree/consensus/errors.hpp"
#include "minagree/consensus/notarization.hpp"
#include "minagree/consensus/proposal.hpp"
#include "minagree/core/logging.hpp"
#include "minagree/core/random.hpp"
#include "minagree/dag/dag.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_map>

namespace minagree {
namespace sim {
namespace {

using dag::VertexIndex;

constexpr char const *LOGGING_NAME = "sim";

/// A vertex that some observer may still be unable to see.
struct InFlight
{
  Digest   id{};
  uint64_t serial{0};
  double   attach_time{0.0};
  double   delay{0.0};
  double   horizon{0.0};  // after this time every observer sees it
  uint64_t region{0};
};

struct TxState
{
  uint64_t fee{0};
  uint32_t carries{0};
};

class Simulator
{
public:
  explicit Simulator(SimConfig const &config)
    : config_{config}
    , rng_{DeriveSeed(config.seed, 0x73696d)}
    , jitter_salt_{DeriveSeed(config.seed, 0x6a6974)}
    , ledger_{MakeRewardPolicy(config)}
  {
    for (std::size_t i = 0; i < config_.n_stakers; ++i)
    {
      stakers_.push_back(NodeId{i + 1});
    }
    beacon_ = consensus::InitialSeed(config_.seed);
  }

  SimulationReport Run()
  {
    SimulationReport report{};
    report.config = config_;

    for (uint64_t round = 1; round <= config_.n_blocks; ++round)
    {
      PlayRound(round);
    }
    report.rounds = std::move(rounds_);

    ledger_.Settle();

    double sum = 0.0;
    double sum_delta = 0.0;
    for (auto const &r : report.rounds)
    {
      sum += static_cast<double>(r.proposal_size);
      sum_delta += r.delta;
      report.total_fees += r.fees;
    }
    auto const n               = static_cast<double>(report.rounds.size());
    report.mean_proposal_size = sum / n;
    report.mean_delta         = sum_delta / n;
    double var                = 0.0;
    for (auto const &r : report.rounds)
    {
      double const d = static_cast<double>(r.proposal_size) - report.mean_proposal_size;
      var += d * d;
    }
    report.stddev_proposal_size = report.rounds.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;

    report.notarized_count  = chain_.blocks.size();
    report.finalized_height = chain_.finalized_height;
    report.finalized_count  = chain_.finalized_count;
    report.txs_injected     = txs_injected_;
    report.txs_included     = txs_included_;
    report.txs_dropped      = txs_dropped_;
    report.txs_pending      = mempool_.size();
    report.ledger           = ledger_.accounts();
    return report;
  }

private:
  void PlayRound(uint64_t round)
  {
    beacon_ = consensus::NextSeed(beacon_, round);
    auto ctx = consensus::DrawRoles(beacon_, stakers_, config_.n_attachers, config_.committee_size,
                                    round);

    InjectTransactions(round);

    RoundRecord record{};
    record.round = round;

    auto const round_vertices = Attach(round, ctx.attachers, record);

    view_.n_vertices = config_.n_attachers;
    if (config_.proposal_targets == ProposalTargets::ROUND)
    {
      view_.targets = dag::VertexIdSet(round_vertices.begin(), round_vertices.end());
    }
    else
    {
      view_.targets.reset();
    }

    consensus::CoveragePolicy policy{};
    policy.max_block_txs = config_.max_block_txs;

    std::vector<consensus::Proposal> proposals;
    for (std::size_t k = 0; k < config_.n_proposers; ++k)
    {
      proposals.push_back(consensus::MakeProposal(dag_, ctx, ctx.proposer_ranking[k],
                                                  chain_.HeadHash(), policy, view_));
    }

    auto block = consensus::NotarizeRound(proposals, ctx, config_.notarization,
                                          config_.competitive_lambda);
    auto assembled = consensus::AssembleTransactions(dag_, block.proposal.tip_set, view_,
                                                     config_.max_block_txs);
    block.tx_list          = std::move(assembled.tx_list);
    block.carried_over     = std::move(assembled.carried_over);
    block.covered_vertices = std::move(assembled.covered_vertices);

    RecordBlock(block, ctx, record);
    chain_.blocks.push_back(block);
    rounds_.push_back(record);

    for (auto const &final_block : consensus::Finalize(chain_, round))
    {
      rounds_[final_block.round - 1].finalized_round = round;
      dag::VertexIdSet cover(final_block.covered_vertices.begin(),
                             final_block.covered_vertices.end());
      dag_.PruneFinalized(cover);
      for (auto const &id : final_block.covered_vertices)
      {
        view_.committed_vertices.erase(id);
      }
    }

    dag_.DiscardStaleTips(round, config_.tip_discard_age);

    MINAGREE_LOG_DEBUG(LOGGING_NAME, "round ", round, " tips ", record.proposal_size, " txs ",
                       record.tx_count, " active ", dag_.active_count());
  }

  void InjectTransactions(uint64_t round)
  {
    double const p = 1.0 / config_.fee_mean;
    for (std::size_t i = 0; i < config_.mempool_rate; ++i)
    {
      dag::Transaction tx{};
      tx.tx_hash = Sha256{}
                       .Update("minagree.tx")
                       .UpdateU64(config_.seed)
                       .UpdateU64(round)
                       .UpdateU64(txs_injected_)
                       .Final();
      tx.fee    = 1 + rng_.Geometric(p);
      tx.sender = stakers_[rng_.UniformIndex(stakers_.size())];
      tx_state_.emplace(tx.tx_hash, TxState{tx.fee, 0});
      mempool_.push_back(tx);
      ++txs_injected_;
    }
  }

  std::vector<double> ArrivalTimes(uint64_t round, std::size_t n)
  {
    std::vector<double> times(n, static_cast<double>(round));
    if (config_.arrival == ArrivalMode::STAGGERED)
    {
      for (std::size_t k = 0; k < n; ++k)
      {
        times[k] += static_cast<double>(k) / static_cast<double>(n);
      }
    }
    else if (config_.arrival == ArrivalMode::POISSON)
    {
      for (auto &t : times)
      {
        t += rng_.UniformReal();
      }
      std::sort(times.begin(), times.end());
    }
    return times;
  }

  double DrawDelay()
  {
    switch (config_.delay_model)
    {
    case DelayKind::NONE:
      return 0.0;
    case DelayKind::FIXED:
      return config_.delay_rounds;
    case DelayKind::UNIFORM:
      return rng_.UniformReal() * config_.delay_rounds;
    }
    return 0.0;
  }

  double LinkJitter(uint64_t serial, NodeId observer) const
  {
    if (config_.link_jitter == 0.0)
    {
      return 0.0;
    }
    uint64_t const bits = Mix64(jitter_salt_ ^ Mix64(serial * 0x9E3779B97F4A7C15ull + observer.value));
    return config_.link_jitter * UnitInterval(bits);
  }

  uint64_t RegionOf(NodeId node) const
  {
    return (node.value - 1) % config_.n_regions;
  }

  /// Eligible tips of the observer's view at time t, ascending id, and the size of the view.
  std::vector<VertexIndex> ViewCandidates(uint64_t round, double t, NodeId observer,
                                          std::size_t &universe)
  {
    std::erase_if(in_flight_, [&](InFlight const &f) { return f.horizon < t; });

    BitSet                   hidden;
    std::vector<VertexIndex> hidden_list;
    for (auto const &f : in_flight_)
    {
      auto index = dag_.IndexOf(f.id);
      if (!index)
      {
        continue;
      }
      double const link = LinkJitter(f.serial, observer) +
                          (f.region != RegionOf(observer) ? config_.region_delay : 0.0);
      bool visible = f.attach_time < t && f.attach_time + f.delay + link <= t;
      if (visible)
      {
        for (auto p : dag_.ParentsAt(*index))
        {
          if (p != dag::BOUNDARY && hidden.Test(p))
          {
            visible = false;
          }
        }
      }
      if (!visible)
      {
        hidden.Set(*index);
        hidden_list.push_back(*index);
      }
    }

    universe = dag_.active_count() - hidden_list.size();

    std::vector<VertexIndex> candidates;
    for (auto tip : tips_)
    {
      if (!hidden.Test(tip))
      {
        candidates.push_back(tip);
      }
    }

    if (!hidden_list.empty())
    {
      std::size_t const direct = candidates.size();
      for (auto index : hidden_list)
      {
        for (auto p : dag_.ParentsAt(index))
        {
          if (p == dag::BOUNDARY || hidden.Test(p) || !dag_.IsEligibleAt(p) ||
              round - dag_.RoundAt(p) > config_.tip_discard_age)
          {
            continue;
          }
          auto const &children = dag_.ChildrenAt(p);
          bool const  exposed  = std::all_of(children.begin(), children.end(),
                                             [&](VertexIndex c) { return hidden.Test(c); });
          if (exposed)
          {
            candidates.push_back(p);
          }
        }
      }
      std::sort(candidates.begin() + static_cast<std::ptrdiff_t>(direct), candidates.end());
      candidates.erase(std::unique(candidates.begin() + static_cast<std::ptrdiff_t>(direct),
                                   candidates.end()),
                       candidates.end());
      std::sort(candidates.begin(), candidates.end(), [&](VertexIndex a, VertexIndex b) {
        return dag_.IdAt(a) < dag_.IdAt(b);
      });
    }

    return candidates;
  }

  std::vector<Digest> Attach(uint64_t round, std::vector<NodeId> const &attachers,
                             RoundRecord &record)
  {
    tips_ = dag_.TipIndices(true);

    auto const          times = ArrivalTimes(round, attachers.size());
    std::vector<Digest> added;
    std::size_t         candidate_total = 0;

    for (std::size_t k = 0; k < attachers.size(); ++k)
    {
      std::size_t universe   = 0;
      auto const  candidates = ViewCandidates(round, times[k], attachers[k], universe);
      if (candidates.empty())
      {
        MINAGREE_LOG_INFO(LOGGING_NAME, "attacher ", attachers[k].value, " sees no eligible tip");
        continue;
      }
      candidate_total += candidates.size();

      auto const parents =
          attachment::SelectParentIndices(dag_, candidates, config_.strategy, rng_, universe);
      auto vertex = attachment::BuildVertex(dag_, attachers[k], mempool_,
                                            {dag_.IdAt(parents[0]), dag_.IdAt(parents[1])}, round);
      auto const id = dag_.AttachVertex(std::move(vertex));

      std::erase_if(tips_, [&](VertexIndex tip) { return tip == parents[0] || tip == parents[1]; });
      tips_.push_back(dag_.RequireIndex(id));
      std::sort(tips_.begin(), tips_.end(),
                [&](VertexIndex a, VertexIndex b) { return dag_.IdAt(a) < dag_.IdAt(b); });

      InFlight f{};
      f.id          = id;
      f.serial      = vertex_serial_++;
      f.attach_time = times[k];
      f.delay       = DrawDelay();
      f.horizon     = f.attach_time + f.delay + config_.link_jitter + config_.region_delay;
      f.region      = RegionOf(attachers[k]);
      in_flight_.push_back(f);

      added.push_back(id);
    }

    record.mean_candidates =
        attachers.empty() ? 0.0
                          : static_cast<double>(candidate_total) /
                                static_cast<double>(attachers.size());
    return added;
  }

  void RecordBlock(consensus::NotarizedBlock const &block, consensus::RoundContext const &ctx,
                   RoundRecord &record)
  {
    auto const &proposal = block.proposal;
    record.producer        = proposal.proposer;
    record.block_hash      = block.block_hash;
    record.prev_block_hash = proposal.prev_block_hash;
    record.merkle_root     = proposal.merkle_root;
    record.proposal_size   = proposal.tip_set.size();
    record.n_descendants   = proposal.n_descendants;
    record.n_vertices      = proposal.n_vertices;
    record.delta           = proposal.delta;
    record.tx_count        = block.tx_list.size();
    record.carried_over    = block.carried_over.size();

    for (auto const &id : block.covered_vertices)
    {
      view_.committed_vertices.insert(id);
    }

    TxHashSet settled;
    for (auto const &tx : block.tx_list)
    {
      record.fees += tx_state_.at(tx).fee;
      view_.included_txs.insert(tx);
      settled.insert(tx);
      ++txs_included_;
    }
    for (auto const &tx : block.carried_over)
    {
      auto &state = tx_state_.at(tx);
      if (++state.carries > config_.carry_retry_limit)
      {
        view_.included_txs.insert(tx);
        settled.insert(tx);
        ++txs_dropped_;
      }
    }
    std::erase_if(mempool_, [&](dag::Transaction const &tx) { return settled.count(tx.tx_hash) != 0; });

    incentives::RoundOutcome outcome{};
    outcome.round     = ctx.round;
    outcome.fees      = record.fees;
    outcome.producer  = proposal.proposer;
    outcome.attachers = ctx.attachers;
    outcome.committee = block.signers;
    if (proposal.n_vertices != 0)
    {
      outcome.delta = incentives::DeltaScore(std::min(proposal.n_descendants, proposal.n_vertices),
                                             proposal.n_vertices);
    }
    ledger_.Accrue(outcome);
  }

  using TxHashSet = consensus::TxHashSet;

  SimConfig    config_;
  RandomStream rng_;
  uint64_t     jitter_salt_;

  std::vector<NodeId> stakers_{};
  Digest              beacon_{};

  dag::Dag                 dag_{};
  std::vector<VertexIndex> tips_{};
  std::vector<InFlight>    in_flight_{};
  uint64_t                 vertex_serial_{0};

  std::vector<dag::Transaction>                       mempool_{};
  std::unordered_map<Digest, TxState, DigestHash>     tx_state_{};
  std::size_t                                         txs_injected_{0};
  std::size_t                                         txs_included_{0};
  std::size_t                                         txs_dropped_{0};

  consensus::BlockView  view_{};
  consensus::ChainState    chain_{};
  std::vector<RoundRecord> rounds_{};
  incentives::RewardLedger ledger_;
};

}  // namespace

SimulationReport RunSimulation(SimConfig const &config)
{
  Validate(config);
  auto const start  = std::chrono::steady_clock::now();
  auto       report = Simulator{config}.Run();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json ToJson(SimulationReport const &report, bool include_rounds)
{
  using nlohmann::json;

  json balances = json::object();
  for (auto const &[node, amount] : report.ledger.balances)
  {
    balances[std::to_string(node.value)] = amount;
  }

  json out;
  out["config"]     = ToJson(report.config);
  out["aggregates"] = {
      {"mean_proposal_size", report.mean_proposal_size},
      {"stddev_proposal_size", report.stddev_proposal_size},
      {"mean_delta", report.mean_delta},
      {"notarized_count", report.notarized_count},
      {"finalized_height", report.finalized_height},
      {"finalized_count", report.finalized_count},
      {"total_fees", report.total_fees},
      {"txs_injected", report.txs_injected},
      {"txs_included", report.txs_included},
      {"txs_dropped", report.txs_dropped},
      {"txs_pending", report.txs_pending},
      {"rewards_collected", report.ledger.total_collected},
      {"rewards_paid", report.ledger.total_paid},
  };
  out["balances"] = balances;

  if (include_rounds)
  {
    json rounds = json::array();
    for (auto const &r : report.rounds)
    {
      rounds.push_back({
          {"round", r.round},
          {"producer", r.producer.value},
          {"block_hash", ToHex(r.block_hash)},
          {"prev_block_hash", ToHex(r.prev_block_hash)},
          {"merkle_root", ToHex(r.merkle_root)},
          {"finalized_round", r.finalized_round},
          {"proposal_size", r.proposal_size},
          {"n_descendants", r.n_descendants},
          {"n_vertices", r.n_vertices},
          {"delta", r.delta},
          {"fees", r.fees},
          {"tx_count", r.tx_count},
          {"carried_over", r.carried_over},
          {"mean_candidates", r.mean_candidates},
      });
    }
    out["rows"] = rounds;
  }
  return out;
}

}  // namespace sim
}  // namespace minagree
