#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "lrlab/chains.hpp"
#include "lrlab/models.hpp"

using namespace lrlab;

namespace {

TwoFamilyHamiltonian tfim(int n) {
  ModelParams p;
  p.name = "tfim";
  p.length = n;
  return build_model(p);
}

/// Test-side enumeration of admissible sequences (start included), written
/// directly from the construction rules.
void enumerate(const NoncommutingAdjacency& adj, std::vector<int>& seq, int n_max,
               const std::function<void(const std::vector<int>&)>& visit) {
  visit(seq);
  const int n = static_cast<int>(seq.size()) - 1;
  if (n == n_max) return;
  std::vector<int> next(adj.neighbours(seq.back()).begin(), adj.neighbours(seq.back()).end());
  // 1-based position of the next operator is n + 2; odd positions may also
  // draw from the Z set of the operator two places back.
  if ((n + 2) % 2 == 1) {
    const auto back = adj.neighbours(seq[seq.size() - 2]);
    next.insert(next.end(), back.begin(), back.end());
  }
  for (int k : next) {
    seq.push_back(k);
    enumerate(adj, seq, n_max, visit);
    seq.pop_back();
  }
}

/// Synthetic two-family chain of bonds on a path: family 0 on (0,1), (2,3),
/// ..., family 1 on (1,2), (3,4), ...; every overlapping opposite pair is a
/// candidate Z relation.
struct BondLadder {
  InteractionGraph graph;
  std::vector<SupportRegion> supports;
  std::vector<int> families;

  explicit BondLadder(int sites) : graph(path_graph(sites)) {
    for (int i = 0; i + 1 < sites; ++i) {
      supports.emplace_back(graph, std::vector<int>{i, i + 1});
      families.push_back(i % 2);
    }
  }

  std::vector<std::pair<int, int>> candidate_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t a = 0; a < supports.size(); ++a)
      for (std::size_t b = a + 1; b < supports.size(); ++b)
        if (families[a] != families[b] && overlaps(supports[a], supports[b]))
          out.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return out;
  }

  NoncommutingAdjacency adjacency(const std::vector<std::pair<int, int>>& pairs) const {
    std::vector<std::vector<int>> z(supports.size());
    for (auto [a, b] : pairs) {
      z[static_cast<std::size_t>(a)].push_back(b);
      z[static_cast<std::size_t>(b)].push_back(a);
    }
    return NoncommutingAdjacency(z, supports, families);
  }
};

}  // namespace

TEST(Chains, TfimSixSitesMatchesBruteForce) {
  const auto h = tfim(6);
  const auto adj = noncommuting_adjacency(h);
  const SupportRegion target(h.graph(), {4});
  const int start = h.flat_id({0, 0});
  const auto dp = count_chains_dp(h.graph(), adj, start, target, 6);
  const auto bf = count_chains_bruteforce(h.graph(), adj, start, target, 6);
  EXPECT_EQ(dp.d, 3);
  EXPECT_EQ(dp.counts, bf.counts);
  EXPECT_EQ(dp.weighted, bf.weighted);
  // R n < d for n = 0 and n = 1.
  EXPECT_EQ(dp.counts[0], 0);
  EXPECT_EQ(dp.counts[1], 0);
}

TEST(Chains, DpEqualsBruteForceOnEveryStartAndTarget) {
  for (int n : {3, 4, 5, 6}) {
    const auto h = tfim(n);
    const auto adj = noncommuting_adjacency(h);
    for (int start = 0; start < adj.size(); ++start) {
      for (int site = 0; site < n; ++site) {
        const SupportRegion target(h.graph(), {site});
        const auto dp = count_chains_dp(h.graph(), adj, start, target, 8);
        const auto bf = count_chains_bruteforce(h.graph(), adj, start, target, 8);
        ASSERT_EQ(dp.counts, bf.counts) << "n=" << n << " start=" << start << " site=" << site;
        ASSERT_EQ(dp.weighted, bf.weighted);
      }
    }
  }
}

TEST(Chains, CutoffAndGrowthEnvelope) {
  const auto h = tfim(6);
  const auto adj = noncommuting_adjacency(h);
  const int R = h.locality_radius();
  const double root2nu = std::sqrt(2.0) * adj.nu();
  for (int start = 0; start < adj.size(); ++start) {
    const SupportRegion target(h.graph(), {5});
    const auto t = count_chains_dp(h.graph(), adj, start, target, 20);
    for (int n = 0; n <= 20; ++n) {
      const auto k = static_cast<std::size_t>(n);
      if (R * n < t.d) EXPECT_EQ(t.counts[k], 0) << n;
      EXPECT_LE(t.counts[k], t.weighted[k]);
      EXPECT_LE(t.weighted[k].convert_to<double>(), std::pow(root2nu, n) * (1 + 1e-12));
    }
  }
}

TEST(Chains, WeightedCountMatchesIndependentEnumeration) {
  const auto h = tfim(5);
  const auto adj = noncommuting_adjacency(h);
  const SupportRegion target(h.graph(), {3, 4});
  for (int start = 0; start < adj.size(); ++start) {
    std::vector<long> weighted(8, 0);
    std::vector<int> seq{start};
    enumerate(adj, seq, 7, [&](const std::vector<int>& s) {
      const std::size_t n = s.size() - 1;
      bool hit = overlaps(adj.support(s[n]), target);
      if (n % 2 == 1) hit = hit || overlaps(adj.support(s[n - 1]), target);
      if (hit) ++weighted[n];
    });
    const auto dp = count_chains_dp(h.graph(), adj, start, target, 7);
    for (std::size_t n = 0; n < weighted.size(); ++n) EXPECT_EQ(dp.weighted[n], weighted[n]);
  }
}

TEST(Chains, CollapsedSequencesAlternateFamilies) {
  const auto h = tfim(6);
  const auto adj = noncommuting_adjacency(h);
  std::vector<int> seq{h.flat_id({0, 2})};
  long visited = 0;
  enumerate(adj, seq, 8, [&](const std::vector<int>& s) {
    // Drop even positions whose successor shares their family.
    std::vector<int> kept{s[0]};
    for (std::size_t i = 1; i < s.size(); ++i) {
      const bool dummy = i % 2 == 1 && i + 1 < s.size() && adj.family(s[i + 1]) == adj.family(s[i]);
      if (!dummy) kept.push_back(s[i]);
    }
    for (std::size_t i = 1; i < kept.size(); ++i)
      EXPECT_NE(adj.family(kept[i]), adj.family(kept[i - 1]));
    ++visited;
  });
  EXPECT_GT(visited, 1000);
}

TEST(Chains, DickeAdjacencyMatchesBruteForce) {
  ModelParams p;
  p.name = "dicke_chain";
  p.length = 4;
  p.truncation = 2;
  const auto h = build_model(p);
  const auto adj = noncommuting_adjacency(h);
  for (int start = 0; start < adj.size(); ++start) {
    const SupportRegion target(h.graph(), {dicke_mode_site(4, 3)});
    const auto dp = count_chains_dp(h.graph(), adj, start, target, 8);
    const auto bf = count_chains_bruteforce(h.graph(), adj, start, target, 8);
    EXPECT_EQ(dp.counts, bf.counts);
    EXPECT_EQ(dp.weighted, bf.weighted);
  }
}

TEST(Chains, RandomSubgraphsMatchAndAreMonotone) {
  std::mt19937 rng(99);
  const BondLadder ladder(13);  // 12 terms
  const auto all = ladder.candidate_pairs();
  const auto full_adj = ladder.adjacency(all);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<int, int>> kept;
    for (auto pr : all)
      if (rng() % 3 != 0) kept.push_back(pr);
    const auto adj = ladder.adjacency(kept);
    const int start = static_cast<int>(rng() % 12);
    const SupportRegion target(ladder.graph, {static_cast<int>(rng() % 13)});
    const auto dp = count_chains_dp(ladder.graph, adj, start, target, 8);
    const auto bf = count_chains_bruteforce(ladder.graph, adj, start, target, 8);
    ASSERT_EQ(dp.counts, bf.counts);
    ASSERT_EQ(dp.weighted, bf.weighted);
    const auto bigger = count_chains_dp(ladder.graph, full_adj, start, target, 8);
    for (std::size_t n = 0; n < dp.counts.size(); ++n) {
      EXPECT_LE(dp.counts[n], bigger.counts[n]);
      EXPECT_LE(dp.weighted[n], bigger.weighted[n]);
    }
  }
}

TEST(Chains, EmptyAdjacencyOnlyContactTerm) {
  ModelParams p;
  p.name = "commuting_ising";
  p.length = 5;
  const auto h = build_model(p);
  const auto adj = noncommuting_adjacency(h);
  const SupportRegion target(h.graph(), {1});
  const auto bf = count_chains_bruteforce(h.graph(), adj, 0, target, 6);
  EXPECT_EQ(bf.counts[0], 1);
  for (std::size_t n = 1; n < bf.counts.size(); ++n) EXPECT_EQ(bf.counts[n], 0);
  EXPECT_EQ(count_chains_dp(h.graph(), adj, 0, target, 6).counts, bf.counts);
}

TEST(Chains, ZeroOrderOverlappingStart) {
  const auto h = tfim(4);
  const auto adj = noncommuting_adjacency(h);
  const SupportRegion target(h.graph(), {0});
  const auto t = count_chains_bruteforce(h.graph(), adj, h.flat_id({0, 0}), target, 0);
  ASSERT_EQ(t.counts.size(), 1u);
  EXPECT_EQ(t.counts[0], 1);
}

TEST(Chains, Errors) {
  const auto h = tfim(4);
  const auto adj = noncommuting_adjacency(h);
  const SupportRegion target(h.graph(), {3});
  EXPECT_THROW(count_chains_dp(h.graph(), adj, 99, target, 3), Error);
  EXPECT_THROW(count_chains_dp(h.graph(), adj, -1, target, 3), Error);
  EXPECT_THROW(count_chains_bruteforce(h.graph(), adj, 0, target, kBruteForceMaxOrder + 1),
               CapacityError);
}

TEST(Chains, LargeOrdersUseArbitraryPrecision) {
  const auto h = tfim(8);
  const auto adj = noncommuting_adjacency(h);
  const SupportRegion target(h.graph(), {7});
  const auto t = count_chains_dp(h.graph(), adj, 0, target, 120);
  EXPECT_GT(t.weighted[120], BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST(ClosedFormChainBound, Examples) {
  BoundConstants c;
  c.nu = 2;
  c.R = 2;
  c.lambda = 1.0;
  // (2 sqrt 2)^3 e^{1 (6 - 5)} = 16 sqrt(2) e.
  EXPECT_NEAR(closed_form_chain_bound(c, 3, 5), 16.0 * std::sqrt(2.0) * std::exp(1.0), 1e-12);
  EXPECT_EQ(closed_form_chain_bound(c, 2, 5), 0.0);
  EXPECT_EQ(closed_form_chain_bound(c, 0, 0), 1.0);
}

TEST(ClosedFormChainBound, DominatesExactCounts) {
  for (int n : {5, 7}) {
    const auto h = tfim(n);
    const auto adj = noncommuting_adjacency(h);
    BoundConstants c = compute_bound_constants(h, adj);
    for (double lambda : {0.1, 0.5, 2.0}) {
      c.lambda = lambda;
      for (int start = 0; start < adj.size(); ++start) {
        const SupportRegion target(h.graph(), {n - 1});
        const auto t = count_chains_dp(h.graph(), adj, start, target, 16);
        for (int k = 0; k <= 16; ++k) {
          if (c.R * k < t.d) continue;
          EXPECT_LE(t.weighted[static_cast<std::size_t>(k)].convert_to<double>(),
                    closed_form_chain_bound(c, k, t.d) * (1 + 1e-12));
        }
      }
    }
  }
}

TEST(MaxOverStarts, EntrywiseMaximum) {
  const auto h = tfim(6);
  const auto adj = noncommuting_adjacency(h);
  const SupportRegion target(h.graph(), {5});
  std::vector<ChainCountTable> tables;
  for (int s : {0, 1, 6}) tables.push_back(count_chains_dp(h.graph(), adj, s, target, 9));
  const auto m = max_over_starts(tables);
  for (std::size_t n = 0; n < m.counts.size(); ++n) {
    for (const auto& t : tables) EXPECT_GE(m.counts[n], t.counts[n]);
  }
  EXPECT_EQ(m.d, std::min({tables[0].d, tables[1].d, tables[2].d}));
  EXPECT_THROW(max_over_starts({}), Error);
}
