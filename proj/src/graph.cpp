#include "lrlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <string>

#include "lrlab/types.hpp"

namespace lrlab {

InteractionGraph::InteractionGraph(int site_count, std::span<const Edge> edges)
    : site_count_(site_count) {
  if (site_count <= 0) {
    throw ConfigError("graph: site count must be positive");
  }
  if (edges.empty() && site_count > 1) {
    throw ConfigError("graph: empty edge list for " + std::to_string(site_count) + " sites");
  }
  for (auto [a, b] : edges) {
    if (!contains(a) || !contains(b)) {
      throw ConfigError("graph: edge (" + std::to_string(a) + "," + std::to_string(b) +
                        ") references a site outside [0," + std::to_string(site_count) + ")");
    }
    if (a == b) {
      throw ConfigError("graph: self loop at site " + std::to_string(a));
    }
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  std::vector<std::vector<int>> neighbours(site_count_);
  for (auto [a, b] : edges_) {
    neighbours[a].push_back(b);
    neighbours[b].push_back(a);
  }

  const auto n = static_cast<std::size_t>(site_count_);
  distances_.assign(n * n, -1);
  for (int source = 0; source < site_count_; ++source) {
    int* row = distances_.data() + static_cast<std::size_t>(source) * n;
    std::deque<int> frontier{source};
    row[source] = 0;
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop_front();
      for (int w : neighbours[v]) {
        if (row[w] < 0) {
          row[w] = row[v] + 1;
          frontier.push_back(w);
        }
      }
    }
    if (std::find(row, row + n, -1) != row + n) {
      throw ConfigError("graph: interaction graph is disconnected");
    }
  }
}

int InteractionGraph::distance(int a, int b) const {
  if (!contains(a) || !contains(b)) {
    throw ConfigError("graph: site " + std::to_string(contains(a) ? b : a) +
                      " is outside the graph");
  }
  return distances_[static_cast<std::size_t>(a) * static_cast<std::size_t>(site_count_) +
                    static_cast<std::size_t>(b)];
}

InteractionGraph build_graph(int site_count, std::span<const Edge> edges) {
  return InteractionGraph(site_count, edges);
}

InteractionGraph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return InteractionGraph(n, edges);
}

SupportRegion::SupportRegion(const InteractionGraph& graph, std::vector<int> sites)
    : sites_(std::move(sites)) {
  if (sites_.empty()) {
    throw ConfigError("support region must contain at least one site");
  }
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
  for (int s : sites_) {
    if (!graph.contains(s)) {
      throw ConfigError("support region: site " + std::to_string(s) + " is outside the graph");
    }
  }
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    for (std::size_t j = i + 1; j < sites_.size(); ++j) {
      diameter_ = std::max(diameter_, graph.distance(sites_[i], sites_[j]));
    }
  }
}

bool SupportRegion::contains(int site) const noexcept {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

int region_distance(const InteractionGraph& graph, const SupportRegion& a,
                    const SupportRegion& b) {
  int best = -1;
  for (int x : a.sites()) {
    for (int y : b.sites()) {
      const int d = graph.distance(x, y);
      if (best < 0 || d < best) best = d;
    }
  }
  return best;
}

bool overlaps(const SupportRegion& a, const SupportRegion& b) {
  auto i = a.sites().begin();
  auto j = b.sites().begin();
  while (i != a.sites().end() && j != b.sites().end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

SupportRegion region_union(const InteractionGraph& graph, const SupportRegion& a,
                           const SupportRegion& b) {
  std::vector<int> merged;
  std::set_union(a.sites().begin(), a.sites().end(), b.sites().begin(), b.sites().end(),
                 std::back_inserter(merged));
  return SupportRegion(graph, std::move(merged));
}

}  // namespace lrlab
