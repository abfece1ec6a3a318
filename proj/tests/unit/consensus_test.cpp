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

#include "minagree/consensus/beacon.hpp"
#include "minagree/consensus/chain.hpp"
#include "minagree/consensus/errors.hpp"
#include "minagree/consensus/merkle.hpp"
#include "minagree/consensus/notarization.hpp"
#include "minagree/consensus/proposal.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace minagree {
namespace {

using consensus::ConsensusError;
using testing::Attach;
using testing::TxHash;

std::vector<NodeId> Stakers(std::size_t n)
{
  std::vector<NodeId> out;
  for (std::size_t i = 1; i <= n; ++i)
  {
    out.push_back(NodeId{i});
  }
  return out;
}

template <typename Fn>
void ExpectConsensusError(ConsensusError::Code code, Fn &&fn)
{
  try
  {
    fn();
    ADD_FAILURE() << "no error raised";
  }
  catch (ConsensusError const &e)
  {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

TEST(MerkleTest, MatchesGoldenVectors)
{
  std::ifstream in{testing::FixturePath("merkle_vectors.txt")};
  ASSERT_TRUE(in);
  std::string line;
  int         checked = 0;
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '#')
    {
      continue;
    }
    std::istringstream  fields{line};
    std::string         name;
    std::size_t         count = 0;
    fields >> name >> count;
    std::vector<Digest> leaves(count);
    std::string         hex;
    for (auto &leaf : leaves)
    {
      fields >> hex;
      leaf = DigestFromHex(hex);
    }
    fields >> hex;
    EXPECT_EQ(ToHex(consensus::MerkleRoot(leaves)), hex) << name;
    ++checked;
  }
  EXPECT_EQ(checked, 5);
}

TEST(MerkleTest, StructuralCases)
{
  EXPECT_EQ(consensus::MerkleRoot({}), ZERO_DIGEST);
  std::vector<Digest> one{TxHash(1)};
  EXPECT_EQ(consensus::MerkleRoot(one), TxHash(1));
  std::vector<Digest> three{TxHash(1), TxHash(2), TxHash(3)};
  EXPECT_EQ(consensus::MerkleRoot(three),
            HashPair(HashPair(TxHash(1), TxHash(2)), HashPair(TxHash(3), TxHash(3))));
}

TEST(BeaconTest, MatchesGoldenVectors)
{
  std::ifstream in{testing::FixturePath("beacon_vectors.txt")};
  ASSERT_TRUE(in);
  std::string line;
  Digest      current{};
  int         checked = 0;
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '#')
    {
      continue;
    }
    std::istringstream fields{line};
    uint64_t           seed  = 0;
    uint64_t           round = 0;
    std::string        hex;
    fields >> seed >> round >> hex;
    current = round == 0 ? consensus::InitialSeed(seed) : consensus::NextSeed(current, round);
    EXPECT_EQ(ToHex(current), hex) << "seed " << seed << " round " << round;
    ++checked;
  }
  EXPECT_EQ(checked, 10);
}

TEST(BeaconTest, RolesHaveRequestedSizes)
{
  auto const stakers = Stakers(20);
  auto const ctx     = consensus::DrawRoles(consensus::InitialSeed(3), stakers, 7, 5, 4);
  EXPECT_EQ(ctx.round, 4u);
  EXPECT_EQ(ctx.attachers.size(), 7u);
  EXPECT_EQ(ctx.committee.size(), 5u);
  EXPECT_EQ(ctx.n_stakers(), 20u);

  auto ranking = ctx.proposer_ranking;
  std::sort(ranking.begin(), ranking.end());
  EXPECT_EQ(ranking, stakers);
  EXPECT_EQ(consensus::RankOf(ctx, ctx.proposer_ranking[3]), 3u);
  EXPECT_EQ(consensus::RankOf(ctx, NodeId{99}), 20u);

  ExpectConsensusError(ConsensusError::Code::INSUFFICIENT_STAKERS, [&] {
    consensus::DrawRoles(consensus::InitialSeed(3), stakers, 21, 5);
  });
}

TEST(BeaconTest, RankIsUniform)
{
  std::size_t const n       = 10;
  auto const        stakers = Stakers(n);
  std::vector<int>  first(n + 1, 0);
  Digest            seed   = consensus::InitialSeed(1);
  int const         rounds = 20000;
  for (int r = 1; r <= rounds; ++r)
  {
    seed = consensus::NextSeed(seed, static_cast<uint64_t>(r));
    auto const ctx = consensus::DrawRoles(seed, stakers, 1, 1);
    first[ctx.proposer_ranking[0].value]++;
  }
  double const expected = static_cast<double>(rounds) / n;
  double       chi2     = 0;
  for (std::size_t i = 1; i <= n; ++i)
  {
    chi2 += (first[i] - expected) * (first[i] - expected) / expected;
  }
  // 9 degrees of freedom; the 0.999 quantile is 27.9
  EXPECT_LT(chi2, 27.9);
}

std::size_t BruteForceMinCover(dag::Dag const &dag, BitSet const &targets,
                               std::vector<dag::VertexIndex> const &tips)
{
  std::size_t best = tips.size() + 1;
  for (uint32_t mask = 0; mask < (1u << tips.size()); ++mask)
  {
    std::size_t const size = static_cast<std::size_t>(std::popcount(mask));
    if (size >= best)
    {
      continue;
    }
    BitSet cover;
    for (std::size_t i = 0; i < tips.size(); ++i)
    {
      if ((mask >> i) & 1u)
      {
        cover |= dag.CoverAt(tips[i]);
      }
    }
    if (targets.IsSubsetOf(cover))
    {
      best = size;
    }
  }
  return best;
}

TEST(ProposalTest, GreedyCoverWithinLogFactorOfOptimum)
{
  RandomStream rng{77};
  for (uint64_t seed = 1; seed <= 100; ++seed)
  {
    auto const grown = testing::GrowRandomDag(seed, 19);
    auto const tips  = grown.dag.TipIndices(false);
    BitSet     targets;
    for (dag::VertexIndex i = 0; i < grown.dag.active_count(); ++i)
    {
      if (rng.UniformIndex(2) == 0)
      {
        targets.Set(i);
      }
    }
    auto const chosen = consensus::GreedyMinCoverIndices(grown.dag, targets, tips);
    EXPECT_TRUE(targets.IsSubsetOf(grown.dag.CoverUnion(chosen)));
    auto const optimum = BruteForceMinCover(grown.dag, targets, tips);
    EXPECT_LE(static_cast<double>(chosen.size()), optimum * (1 + std::log(20.0)));
  }
}

TEST(ProposalTest, GreedyCoverRejectsUncoverableTargets)
{
  dag::Dag   dag;
  auto const g = dag.genesis_id();
  auto const a = Attach(dag, g, g, 1);
  Attach(dag, a, a, 2);
  dag.DiscardStaleTips(20, 5);

  ExpectConsensusError(ConsensusError::Code::UNCOVERABLE_TARGETS,
                       [&] { consensus::GreedyMinCover(dag, {a}); });
  EXPECT_THROW(consensus::GreedyMinCover(dag, {TxHash(4)}), dag::DagError);
}

struct ProposalFixture
{
  dag::Dag                dag{};
  std::vector<NodeId>     stakers = Stakers(5);
  consensus::RoundContext ctx =
      consensus::DrawRoles(consensus::InitialSeed(1), stakers, 4, 3, 1);
  Digest a{}, b{}, c{}, d{};

  ProposalFixture()
  {
    auto const g = dag.genesis_id();
    a            = Attach(dag, g, g, 1, {TxHash(1)});
    b            = Attach(dag, g, g, 1, {TxHash(2)});
    c            = Attach(dag, a, a, 1, {TxHash(3)});
    d            = Attach(dag, b, b, 1, {TxHash(4)});
  }
};

TEST(ProposalTest, HonestProposalCoversEverything)
{
  ProposalFixture f;
  auto const      p = consensus::MakeProposal(f.dag, f.ctx, f.ctx.proposer_ranking[1], ZERO_DIGEST,
                                             consensus::CoveragePolicy{});
  EXPECT_EQ(p.rank, 1u);
  EXPECT_EQ(p.tip_set.size(), 2u);
  EXPECT_EQ(p.n_descendants, 5u);
  EXPECT_EQ(p.n_vertices, 4u);
  EXPECT_DOUBLE_EQ(p.delta, 1.0);

  consensus::BlockView view{};
  view.committed_vertices = {f.dag.genesis_id(), f.a, f.c};
  view.n_vertices         = 4;
  auto const q = consensus::MakeProposal(f.dag, f.ctx, f.ctx.proposer_ranking[0], ZERO_DIGEST,
                                         consensus::CoveragePolicy{}, view);
  EXPECT_EQ(q.tip_set, std::vector<Digest>{f.d});
  EXPECT_EQ(q.n_descendants, 2u);
  EXPECT_DOUBLE_EQ(q.delta, 0.5);

  std::vector<Digest> txs{TxHash(2), TxHash(4)};
  EXPECT_EQ(q.merkle_root, consensus::MerkleRoot(txs));
}

TEST(ProposalTest, CensoringDropsTipsAboveTheTarget)
{
  ProposalFixture           f;
  consensus::CoveragePolicy policy{};
  policy.kind         = consensus::PolicyKind::CENSORING;
  policy.censored_txs = {TxHash(1)};
  auto const p = consensus::MakeProposal(f.dag, f.ctx, f.ctx.proposer_ranking[0], ZERO_DIGEST,
                                         policy);
  EXPECT_EQ(p.tip_set, std::vector<Digest>{f.d});
  EXPECT_EQ(p.n_descendants, 3u);

  policy.censored_txs.clear();
  policy.excluded_vertices = {f.dag.genesis_id()};
  auto const none = consensus::MakeProposal(f.dag, f.ctx, f.ctx.proposer_ranking[0], ZERO_DIGEST,
                                            policy);
  EXPECT_TRUE(none.tip_set.empty());
  EXPECT_EQ(none.delta, 0.0);
}

TEST(ProposalTest, EmptyPolicyAndErrors)
{
  ProposalFixture           f;
  consensus::CoveragePolicy policy{};
  policy.kind = consensus::PolicyKind::EMPTY;
  auto const p = consensus::MakeProposal(f.dag, f.ctx, f.ctx.proposer_ranking[0], ZERO_DIGEST,
                                         policy);
  EXPECT_TRUE(p.tip_set.empty());
  EXPECT_EQ(p.n_descendants, 0u);
  EXPECT_EQ(p.merkle_root, ZERO_DIGEST);

  ExpectConsensusError(ConsensusError::Code::UNKNOWN_PROPOSER, [&] {
    consensus::MakeProposal(f.dag, f.ctx, NodeId{42}, ZERO_DIGEST, consensus::CoveragePolicy{});
  });
}

TEST(ProposalTest, AssemblyAppliesCapAndSkipsIncluded)
{
  ProposalFixture      f;
  consensus::BlockView view{};
  view.included_txs = {TxHash(3)};
  std::vector<Digest> tips{f.c, f.d};

  auto const all = consensus::AssembleTransactions(f.dag, tips, view, std::nullopt);
  EXPECT_EQ(all.tx_list.size(), 3u);
  EXPECT_EQ(all.covered_vertices.size(), 5u);
  EXPECT_TRUE(std::find(all.tx_list.begin(), all.tx_list.end(), TxHash(3)) == all.tx_list.end());

  auto const capped = consensus::AssembleTransactions(f.dag, tips, view, 2);
  EXPECT_EQ(capped.tx_list.size(), 2u);
  EXPECT_EQ(capped.carried_over.size(), 1u);
  EXPECT_TRUE(std::equal(capped.tx_list.begin(), capped.tx_list.end(), all.tx_list.begin()));
}

consensus::Proposal MakeRanked(consensus::RoundContext const &ctx, std::size_t rank,
                               double delta)
{
  consensus::Proposal p{};
  p.round    = ctx.round;
  p.proposer = ctx.proposer_ranking[rank];
  p.rank     = rank;
  p.delta    = delta;
  return p;
}

TEST(NotarizationTest, RankModePicksBestRank)
{
  auto const ctx = consensus::DrawRoles(consensus::InitialSeed(5), Stakers(10), 4, 5, 7);
  std::vector<consensus::Proposal> proposals{MakeRanked(ctx, 2, 1.0), MakeRanked(ctx, 0, 0.1),
                                             MakeRanked(ctx, 1, 0.9)};
  auto const block = consensus::NotarizeRound(proposals, ctx, consensus::NotarizationMode::RANK);
  EXPECT_EQ(block.proposal.rank, 0u);
  EXPECT_EQ(block.signers.size(), 5u);
  EXPECT_EQ(block.block_hash, consensus::BlockHash(ZERO_DIGEST, ZERO_DIGEST, 7));
}

TEST(NotarizationTest, CompetitiveModeTradesRankForDelta)
{
  auto const ctx = consensus::DrawRoles(consensus::InitialSeed(5), Stakers(10), 4, 5, 7);
  std::vector<consensus::Proposal> proposals{MakeRanked(ctx, 0, 0.5), MakeRanked(ctx, 3, 0.9)};

  auto const mode  = consensus::NotarizationMode::COMPETITIVE;
  auto const loose = consensus::NotarizeRound(proposals, ctx, mode, 1.0);
  EXPECT_EQ(loose.proposal.rank, 3u);
  auto const strict = consensus::NotarizeRound(proposals, ctx, mode, 2.0);
  EXPECT_EQ(strict.proposal.rank, 0u);
  EXPECT_DOUBLE_EQ(consensus::CompetitiveScore(proposals[1], 1.0, 10), 0.6);

  EXPECT_EQ(consensus::ParseNotarizationMode("competitive"), mode);
  EXPECT_EQ(consensus::ToString(consensus::NotarizationMode::RANK), "rank");
  EXPECT_FALSE(consensus::ParseNotarizationMode("vote"));
}

TEST(NotarizationTest, RejectsInvalidRounds)
{
  auto const ctx = consensus::DrawRoles(consensus::InitialSeed(5), Stakers(10), 4, 5, 7);
  auto const mode = consensus::NotarizationMode::RANK;

  ExpectConsensusError(ConsensusError::Code::NO_PROPOSALS,
                       [&] { consensus::NotarizeRound({}, ctx, mode); });

  std::vector<consensus::Proposal> twice{MakeRanked(ctx, 1, 1), MakeRanked(ctx, 1, 1)};
  ExpectConsensusError(ConsensusError::Code::DUPLICATE_PROPOSER,
                       [&] { consensus::NotarizeRound(twice, ctx, mode); });

  auto forged = MakeRanked(ctx, 1, 1);
  forged.rank = 0;
  std::vector<consensus::Proposal> bad{forged};
  ExpectConsensusError(ConsensusError::Code::UNKNOWN_PROPOSER,
                       [&] { consensus::NotarizeRound(bad, ctx, mode); });

  std::vector<consensus::Proposal> ok{MakeRanked(ctx, 0, 1)};
  std::vector<NodeId>              two_absent(ctx.committee.begin(), ctx.committee.begin() + 2);
  EXPECT_EQ(consensus::NotarizeRound(ok, ctx, mode, 0, two_absent).signers.size(), 3u);
  std::vector<NodeId> three_absent(ctx.committee.begin(), ctx.committee.begin() + 3);
  ExpectConsensusError(ConsensusError::Code::NO_QUORUM,
                       [&] { consensus::NotarizeRound(ok, ctx, mode, 0, three_absent); });
}

consensus::NotarizedBlock ChainBlock(consensus::ChainState const &chain, uint64_t round)
{
  consensus::NotarizedBlock block{};
  block.round                    = round;
  block.proposal.round           = round;
  block.proposal.prev_block_hash = chain.HeadHash();
  block.block_hash               = consensus::BlockHash(chain.HeadHash(), ZERO_DIGEST, round);
  return block;
}

TEST(ChainTest, FinalizesTwoRoundsBehind)
{
  consensus::ChainState chain{};
  for (uint64_t r = 1; r <= 10; ++r)
  {
    chain.blocks.push_back(ChainBlock(chain, r));
    auto const fresh = consensus::Finalize(chain, r);
    if (r < 3)
    {
      EXPECT_TRUE(fresh.empty());
    }
    else
    {
      ASSERT_EQ(fresh.size(), 1u);
      EXPECT_EQ(fresh[0].round, r - 2);
    }
  }
  EXPECT_EQ(chain.finalized_height, 8u);
  EXPECT_EQ(chain.finalized_count, 8u);
  EXPECT_TRUE(consensus::Finalize(chain, 10).empty());
}

TEST(ChainTest, CatchesUpAfterMissedCalls)
{
  consensus::ChainState chain{};
  for (uint64_t r = 1; r <= 6; ++r)
  {
    chain.blocks.push_back(ChainBlock(chain, r));
  }
  auto const fresh = consensus::Finalize(chain, 6);
  ASSERT_EQ(fresh.size(), 4u);
  for (std::size_t i = 0; i < fresh.size(); ++i)
  {
    EXPECT_EQ(fresh[i].round, i + 1);
  }
}

TEST(ChainTest, DetectsForks)
{
  consensus::ChainState chain{};
  chain.blocks.push_back(ChainBlock(chain, 1));
  auto fork       = chain.blocks.back();
  fork.block_hash = TxHash(1);
  chain.blocks.push_back(fork);
  ExpectConsensusError(ConsensusError::Code::FORK_DETECTED,
                       [&] { consensus::Finalize(chain, 5); });
}

}  // namespace
}  // namespace minagree
