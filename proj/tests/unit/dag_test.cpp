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

#include "minagree/dag/dag.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace minagree {
namespace {

using dag::Dag;
using dag::DagError;
using testing::Attach;
using testing::ClosureOracle;
using testing::GrowRandomDag;
using testing::TxHash;

TEST(DagTest, GenesisIsTheOnlyTip)
{
  Dag dag;
  EXPECT_EQ(dag.active_count(), 1u);
  EXPECT_EQ(dag.Tips(true), std::vector<Digest>{dag.genesis_id()});
  EXPECT_TRUE(dag.IsTip(dag.genesis_id()));
}

TEST(DagTest, TipsTrackNewChildren)
{
  Dag        dag;
  auto const g = dag.genesis_id();
  auto const a = Attach(dag, g, g, 1);
  auto const b = Attach(dag, g, g, 1);
  EXPECT_FALSE(dag.IsTip(g));

  auto tips = dag.Tips(true);
  std::vector<Digest> expected{a, b};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(tips, expected);

  auto const c = Attach(dag, a, b, 2);
  EXPECT_EQ(dag.Tips(true), std::vector<Digest>{c});
  EXPECT_EQ(dag.CoverCardinality(std::vector<Digest>{c}), 4u);
}

TEST(DagTest, CoverMatchesBfsOracleOnRandomDags)
{
  for (uint64_t seed = 1; seed <= 50; ++seed)
  {
    auto const grown = GrowRandomDag(seed, 40);
    RandomStream rng{seed + 7};
    for (int q = 0; q < 10; ++q)
    {
      std::vector<Digest> roots;
      auto const          k = 1 + rng.UniformIndex(4);
      for (uint64_t i = 0; i < k; ++i)
      {
        roots.push_back(grown.ids[rng.UniformIndex(grown.ids.size())]);
      }
      auto const oracle = ClosureOracle(grown, roots);
      ASSERT_EQ(grown.dag.CoverCardinality(roots), oracle.size());
      auto const cover = grown.dag.CoverSet(roots);
      ASSERT_TRUE(std::equal(cover.begin(), cover.end(), oracle.begin(), oracle.end()));
    }
  }
}

TEST(DagTest, RejectsMalformedVertices)
{
  Dag        dag;
  auto const g = dag.genesis_id();

  dag::Vertex one_parent{};
  one_parent.parents = {g};
  one_parent.round   = 1;
  try
  {
    dag.AttachVertex(one_parent);
    FAIL();
  }
  catch (DagError const &e)
  {
    EXPECT_EQ(e.code(), DagError::Code::INVALID_VERTEX);
  }

  dag::Vertex unknown{};
  unknown.parents = {g, TxHash(1)};
  unknown.round   = 1;
  try
  {
    dag.AttachVertex(unknown);
    FAIL();
  }
  catch (DagError const &e)
  {
    EXPECT_EQ(e.code(), DagError::Code::UNKNOWN_PARENT);
  }

  auto const a = Attach(dag, g, g, 3);
  try
  {
    Attach(dag, a, g, 2);
    FAIL();
  }
  catch (DagError const &e)
  {
    EXPECT_EQ(e.code(), DagError::Code::CYCLE_VIOLATION);
  }
}

TEST(DagTest, RejectsDuplicateVertexAndCoverage)
{
  Dag         dag;
  auto const  g = dag.genesis_id();
  dag::Vertex v{};
  v.parents   = {g, g};
  v.round     = 1;
  v.tx_hashes = {TxHash(1)};
  auto const a = dag.AttachVertex(v);

  try
  {
    dag.AttachVertex(v);
    FAIL();
  }
  catch (DagError const &e)
  {
    EXPECT_EQ(e.code(), DagError::Code::DUPLICATE_VERTEX);
  }

  try
  {
    Attach(dag, a, a, 2, {TxHash(1)});
    FAIL();
  }
  catch (DagError const &e)
  {
    EXPECT_EQ(e.code(), DagError::Code::DUPLICATE_COVERAGE);
  }

  try
  {
    Attach(dag, a, a, 2, {TxHash(2), TxHash(2)});
    FAIL();
  }
  catch (DagError const &e)
  {
    EXPECT_EQ(e.code(), DagError::Code::DUPLICATE_COVERAGE);
  }

  // concurrent vertices may list the same transaction
  EXPECT_NO_THROW(Attach(dag, g, g, 1, {TxHash(1)}));
}

TEST(DagTest, OrderedTransactionsPastFirstWithoutRepeats)
{
  Dag        dag;
  auto const g = dag.genesis_id();
  auto const a = Attach(dag, g, g, 1, {TxHash(1), TxHash(2)});
  auto const b = Attach(dag, g, g, 1, {TxHash(2), TxHash(3)});
  auto const c = Attach(dag, a, b, 2, {TxHash(4)});

  auto const txs = dag.OrderedTransactions(std::vector<Digest>{c});
  ASSERT_EQ(txs.size(), 4u);
  EXPECT_EQ(txs.back(), TxHash(4));

  std::vector<Digest> first = a < b ? std::vector<Digest>{TxHash(1), TxHash(2), TxHash(3)}
                                    : std::vector<Digest>{TxHash(2), TxHash(3), TxHash(1)};
  EXPECT_TRUE(std::equal(first.begin(), first.end(), txs.begin()));
}

TEST(DagTest, StaleTipsBecomeIneligible)
{
  Dag        dag;
  auto const g = dag.genesis_id();
  auto const a = Attach(dag, g, g, 1);
  auto const b = Attach(dag, g, g, 5);

  EXPECT_EQ(dag.DiscardStaleTips(5, 4), 0u);
  EXPECT_EQ(dag.DiscardStaleTips(6, 4), 1u);
  EXPECT_FALSE(dag.IsEligible(a));
  EXPECT_TRUE(dag.IsEligible(b));
  EXPECT_EQ(dag.Tips(true), std::vector<Digest>{b});
  EXPECT_EQ(dag.Tips(false).size(), 2u);
  EXPECT_THROW(dag.DiscardStaleTips(6, 0), std::invalid_argument);
}

TEST(DagTest, PruneLeavesBoundaryParents)
{
  Dag        dag;
  auto const g = dag.genesis_id();
  auto const a = Attach(dag, g, g, 1, {TxHash(1)});
  auto const b = Attach(dag, a, a, 2, {TxHash(2)});

  dag.PruneFinalized(dag.CoverSet(std::vector<Digest>{a}));
  EXPECT_EQ(dag.active_count(), 1u);
  EXPECT_TRUE(dag.IsBoundary(a));
  EXPECT_TRUE(dag.IsBoundary(g));
  EXPECT_FALSE(dag.Contains(a));
  EXPECT_EQ(dag.CoverCardinality(std::vector<Digest>{b}), 1u);

  // a pruned vertex can still be referenced as a parent
  auto const c = Attach(dag, b, a, 3, {TxHash(3)});
  EXPECT_EQ(dag.CoverCardinality(std::vector<Digest>{c}), 2u);
  EXPECT_EQ(dag.OrderedTransactions(std::vector<Digest>{c}),
            (std::vector<Digest>{TxHash(2), TxHash(3)}));
}

TEST(DagTest, PruneRequiresDownwardClosure)
{
  Dag        dag;
  auto const g = dag.genesis_id();
  auto const a = Attach(dag, g, g, 1);
  try
  {
    dag.PruneFinalized({a});
    FAIL();
  }
  catch (DagError const &e)
  {
    EXPECT_EQ(e.code(), DagError::Code::NOT_DOWNWARD_CLOSED);
  }
}

TEST(DagTest, CoverMatchesOracleAfterPruning)
{
  for (uint64_t seed = 1; seed <= 20; ++seed)
  {
    auto grown = GrowRandomDag(seed, 60);
    auto const cut   = grown.ids[20];
    auto const pruned = ClosureOracle(grown, {cut});
    grown.dag.PruneFinalized(grown.dag.CoverSet(std::vector<Digest>{cut}));

    for (std::size_t i = 21; i < grown.ids.size(); ++i)
    {
      auto const &id = grown.ids[i];
      if (pruned.count(id) != 0)
      {
        continue;
      }
      auto oracle = ClosureOracle(grown, {id});
      std::size_t expected = 0;
      for (auto const &v : oracle)
      {
        expected += pruned.count(v) == 0 ? 1 : 0;
      }
      ASSERT_EQ(grown.dag.CoverCardinality(std::vector<Digest>{id}), expected);
    }
  }
}

TEST(DagTest, TransactionLocationIndex)
{
  Dag        dag;
  auto const g = dag.genesis_id();
  auto const a = Attach(dag, g, g, 1, {TxHash(9)});
  auto const b = Attach(dag, g, g, 1, {TxHash(9)});

  auto const *locations = dag.LocationsOf(TxHash(9));
  ASSERT_NE(locations, nullptr);
  EXPECT_EQ(locations->size(), 2u);
  EXPECT_EQ(dag.LocationsOf(TxHash(10)), nullptr);
  EXPECT_TRUE(dag.IsTransactionCovered(TxHash(9), dag.CoverAt(dag.RequireIndex(a))));
  EXPECT_FALSE(dag.IsTransactionCovered(TxHash(9), dag.CoverAt(0)));
  (void)b;
}

}  // namespace
}  // namespace minagree
