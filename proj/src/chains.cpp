#include "lrlab/chains.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lrlab {

namespace {

void check_start(const NoncommutingAdjacency& adjacency, int start, int n_max) {
  if (start < 0 || start >= adjacency.size()) {
    throw Error("chains: unknown start term id " + std::to_string(start));
  }
  if (n_max < 0) throw Error("chains: n_max must be nonnegative");
}

ChainCountTable empty_table(const InteractionGraph& graph, const NoncommutingAdjacency& adjacency,
                            int start, const SupportRegion& target, int n_max) {
  ChainCountTable table{start, target, region_distance(graph, adjacency.support(start), target), {}, {}};
  table.counts.assign(static_cast<std::size_t>(n_max) + 1, BigInt(0));
  table.weighted.assign(static_cast<std::size_t>(n_max) + 1, BigInt(0));
  return table;
}

}  // namespace

ChainCountTable count_chains_dp(const InteractionGraph& graph,
                                const NoncommutingAdjacency& adjacency, int start,
                                const SupportRegion& target, int n_max) {
  check_start(adjacency, start, n_max);
  ChainCountTable table = empty_table(graph, adjacency, start, target, n_max);
  const int terms = adjacency.size();
  std::vector<char> hits(static_cast<std::size_t>(terms));
  for (int i = 0; i < terms; ++i) hits[static_cast<std::size_t>(i)] = overlaps(adjacency.support(i), target);

  using Layer = std::vector<BigInt>;
  // Last operator at an odd position: indexed by that operator.
  Layer odd(static_cast<std::size_t>(terms)), odd_w(odd.size()), odd_prev(odd.size());
  // Last operator at an even position: indexed by the penultimate (odd)
  // operator o, then by the position of the last operator within Z_o.
  std::vector<Layer> even(static_cast<std::size_t>(terms)), even_w(even.size());
  for (int o = 0; o < terms; ++o) {
    even[static_cast<std::size_t>(o)].assign(adjacency.neighbours(o).size(), BigInt(0));
    even_w[static_cast<std::size_t>(o)].assign(adjacency.neighbours(o).size(), BigInt(0));
  }
  odd[static_cast<std::size_t>(start)] = 1;
  odd_w[static_cast<std::size_t>(start)] = 1;

  for (int n = 0; n <= n_max; ++n) {
    if (n % 2 == 0) {
      for (int o = 0; o < terms; ++o) {
        if (hits[static_cast<std::size_t>(o)]) {
          table.counts[static_cast<std::size_t>(n)] += odd[static_cast<std::size_t>(o)];
          table.weighted[static_cast<std::size_t>(n)] += odd_w[static_cast<std::size_t>(o)];
        }
      }
      if (n == n_max) break;
      // Even position: must not commute with the previous operator.
      for (int o = 0; o < terms; ++o) {
        const auto z = adjacency.neighbours(o);
        for (std::size_t k = 0; k < z.size(); ++k) {
          even[static_cast<std::size_t>(o)][k] = odd[static_cast<std::size_t>(o)];
          even_w[static_cast<std::size_t>(o)][k] = odd_w[static_cast<std::size_t>(o)];
        }
      }
      odd_prev = odd;
    } else {
      for (int o = 0; o < terms; ++o) {
        const auto z = adjacency.neighbours(o);
        for (std::size_t k = 0; k < z.size(); ++k) {
          if (hits[static_cast<std::size_t>(o)] || hits[static_cast<std::size_t>(z[k])]) {
            table.counts[static_cast<std::size_t>(n)] += even[static_cast<std::size_t>(o)][k];
            table.weighted[static_cast<std::size_t>(n)] += even_w[static_cast<std::size_t>(o)][k];
          }
        }
      }
      if (n == n_max) break;
      // Odd position: must not commute with the previous operator e, or with
      // the penultimate one o (which makes e a dummy).
      Layer next(static_cast<std::size_t>(terms)), next_w(next.size());
      for (int o = 0; o < terms; ++o) {
        const auto z = adjacency.neighbours(o);
        for (std::size_t k = 0; k < z.size(); ++k) {
          const BigInt& c = even[static_cast<std::size_t>(o)][k];
          const BigInt& cw = even_w[static_cast<std::size_t>(o)][k];
          for (int next_op : adjacency.neighbours(z[k])) {
            next[static_cast<std::size_t>(next_op)] += c;
            next_w[static_cast<std::size_t>(next_op)] += cw;
          }
          for (int next_op : z) next_w[static_cast<std::size_t>(next_op)] += cw;
        }
        if (!z.empty() && odd_prev[static_cast<std::size_t>(o)] != 0) {
          for (int next_op : z) next[static_cast<std::size_t>(next_op)] += odd_prev[static_cast<std::size_t>(o)];
        }
      }
      odd = std::move(next);
      odd_w = std::move(next_w);
    }
  }
  return table;
}

namespace {

struct Enumerator {
  const NoncommutingAdjacency& adjacency;
  const std::vector<char>& hits;
  int n_max;
  ChainCountTable& table;
  std::vector<std::set<std::vector<int>>> reduced;
  std::vector<int> sequence;

  void record() {
    const std::size_t n = sequence.size() - 1;
    const bool hit = (n % 2 == 0)
                         ? hits[static_cast<std::size_t>(sequence[n])]
                         : (hits[static_cast<std::size_t>(sequence[n])] ||
                            hits[static_cast<std::size_t>(sequence[n - 1])]);
    if (!hit) return;
    table.weighted[n] += 1;
    std::vector<int> key = sequence;
    // 0-based odd indices are even chain positions; they are dummies when the
    // following operator was drawn from the Z set of the one before them.
    for (std::size_t i = 1; i + 1 < key.size(); i += 2) {
      if (adjacency.family(sequence[i + 1]) == adjacency.family(sequence[i])) key[i] = -1;
    }
    reduced[n].insert(std::move(key));
  }

  void extend() {
    record();
    const std::size_t n = sequence.size() - 1;
    if (static_cast<int>(n) == n_max) return;
    const int last = sequence[n];
    std::vector<int> candidates(adjacency.neighbours(last).begin(), adjacency.neighbours(last).end());
    if (n % 2 == 1) {
      const auto penult = adjacency.neighbours(sequence[n - 1]);
      candidates.insert(candidates.end(), penult.begin(), penult.end());
    }
    for (int c : candidates) {
      sequence.push_back(c);
      extend();
      sequence.pop_back();
    }
  }
};

}  // namespace

ChainCountTable count_chains_bruteforce(const InteractionGraph& graph,
                                        const NoncommutingAdjacency& adjacency, int start,
                                        const SupportRegion& target, int n_max) {
  check_start(adjacency, start, n_max);
  if (n_max > kBruteForceMaxOrder) {
    throw CapacityError("chains: brute-force enumeration is limited to n_max <= " +
                        std::to_string(kBruteForceMaxOrder));
  }
  ChainCountTable table = empty_table(graph, adjacency, start, target, n_max);
  std::vector<char> hits(static_cast<std::size_t>(adjacency.size()));
  for (int i = 0; i < adjacency.size(); ++i) hits[static_cast<std::size_t>(i)] = overlaps(adjacency.support(i), target);

  Enumerator e{adjacency, hits, n_max, table, {}, {start}};
  e.reduced.resize(static_cast<std::size_t>(n_max) + 1);
  e.extend();
  for (int n = 0; n <= n_max; ++n) {
    table.counts[static_cast<std::size_t>(n)] = e.reduced[static_cast<std::size_t>(n)].size();
  }
  return table;
}

ChainCountTable max_over_starts(const std::vector<ChainCountTable>& tables) {
  if (tables.empty()) throw Error("chains: no tables to combine");
  ChainCountTable out = tables.front();
  for (const auto& t : tables) {
    if (!(t.target == out.target) || t.n_max() != out.n_max()) {
      throw Error("chains: tables must share target and order");
    }
    out.d = std::min(out.d, t.d);
    for (std::size_t n = 0; n < t.counts.size(); ++n) {
      out.counts[n] = std::max(out.counts[n], t.counts[n]);
      out.weighted[n] = std::max(out.weighted[n], t.weighted[n]);
    }
  }
  return out;
}

double closed_form_chain_bound(const BoundConstants& consts, int n, int d) {
  if (n < 0 || d < 0) throw Error("closed_form_chain_bound: n and d must be nonnegative");
  if (static_cast<long>(consts.R) * n < d) return 0.0;
  return std::pow(std::sqrt(2.0) * consts.nu, n) *
         std::exp(consts.lambda * (static_cast<double>(consts.R) * n - d));
}

}  // namespace lrlab
