#pragma once

#include <span>
#include <utility>
#include <vector>

namespace lrlab {

using Edge = std::pair<int, int>;

/// Connected interaction graph with a precomputed all-pairs hop-count table.
class InteractionGraph {
 public:
  /// Builds the graph and runs one BFS per site. Duplicate edges are merged.
  /// Throws ConfigError on out-of-range ids, self loops, an empty edge list
  /// for more than one site, or a disconnected graph.
  InteractionGraph(int site_count, std::span<const Edge> edges);

  int site_count() const noexcept { return site_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool contains(int site) const noexcept { return site >= 0 && site < site_count_; }

  /// Hop count between two sites. Throws ConfigError for unknown sites.
  int distance(int a, int b) const;

 private:
  int site_count_;
  std::vector<Edge> edges_;
  std::vector<int> distances_;
};

InteractionGraph build_graph(int site_count, std::span<const Edge> edges);

/// Open chain 0-1-...-(n-1).
InteractionGraph path_graph(int n);

/// Nonempty, sorted, duplicate-free set of sites together with its graph
/// diameter.
class SupportRegion {
 public:
  SupportRegion(const InteractionGraph& graph, std::vector<int> sites);

  const std::vector<int>& sites() const noexcept { return sites_; }
  int diameter() const noexcept { return diameter_; }
  bool contains(int site) const noexcept;

  friend bool operator==(const SupportRegion& a, const SupportRegion& b) {
    return a.sites_ == b.sites_;
  }

 private:
  std::vector<int> sites_;
  int diameter_ = 0;
};

/// Minimum hop count between a site of `a` and a site of `b`; zero iff the
/// regions share a site.
int region_distance(const InteractionGraph& graph, const SupportRegion& a,
                    const SupportRegion& b);

/// Overlap indicator: true iff the two site sets intersect.
bool overlaps(const SupportRegion& a, const SupportRegion& b);

SupportRegion region_union(const InteractionGraph& graph, const SupportRegion& a,
                           const SupportRegion& b);

}  // namespace lrlab
