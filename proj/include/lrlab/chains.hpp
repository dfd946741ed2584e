#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lrlab/constants.hpp"
#include "lrlab/hamiltonian.hpp"

namespace lrlab {

using BigInt = boost::multiprecision::cpp_int;

// Operator chains.
//
// A chain of n operators grows from a start term s (position 1). Position
// 2k must fail to commute with position 2k-1; position 2k+1 must fail to
// commute with position 2k or with position 2k-1. Because Z sets only hold
// opposite-family terms, an odd-position operator taken from Z of position
// 2k-1 shares its family with position 2k, and the two choices never
// coincide. In that case position 2k is a dummy index: it does not enter the
// operator that comes next.
//
// A chain counts towards c_n when its terminal operator (n even) or its
// terminal pair (n odd) overlaps the target region.
//
// Two counts are kept:
//  - `weighted`: every admissible sequence, i.e. the multiplicity produced
//    by iterating the integral recursion term by term;
//  - `counts` (default): dummy positions are collapsed, so sequences that
//    differ only in a dummy operator are counted once.
// Both satisfy c_n <= (sqrt(2) nu)^n, and counts <= weighted.

struct ChainCountTable {
  int start = 0;
  SupportRegion target;
  /// region_distance(support(start), target)
  int d = 0;
  std::vector<BigInt> counts;
  std::vector<BigInt> weighted;

  int n_max() const noexcept { return static_cast<int>(counts.size()) - 1; }
};

/// Dynamic program over (last, penultimate, parity) states.
ChainCountTable count_chains_dp(const InteractionGraph& graph,
                                const NoncommutingAdjacency& adjacency, int start,
                                const SupportRegion& target, int n_max);

inline constexpr int kBruteForceMaxOrder = 10;

/// Explicit enumeration of every admissible sequence. n_max <= 10.
ChainCountTable count_chains_bruteforce(const InteractionGraph& graph,
                                        const NoncommutingAdjacency& adjacency, int start,
                                        const SupportRegion& target, int n_max);

/// Entrywise maximum of several tables that share a target; `d` is the
/// smallest start distance among them.
ChainCountTable max_over_starts(const std::vector<ChainCountTable>& tables);

/// (sqrt(2) nu)^n exp(lambda (R n - d)), and 0 when R n < d.
double closed_form_chain_bound(const BoundConstants& consts, int n, int d);

}  // namespace lrlab
