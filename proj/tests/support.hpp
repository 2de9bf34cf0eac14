#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cliqueorder/graph.hpp"

namespace testsupport {

using cliqueorder::Edge;
using cliqueorder::Graph;
using cliqueorder::Permutation;

// Six-vertex example graph. Edges are listed with 1-based labels as drawn.
inline Graph six_vertex_graph() {
  const std::vector<std::pair<int, int>> one_based{{1, 6}, {6, 4}, {4, 3}, {3, 5}, {5, 1},
                                                   {5, 2}, {2, 1}, {1, 3}, {6, 3}, {6, 5}};
  std::vector<Edge> edges;
  for (auto [u, v] : one_based) edges.emplace_back(u - 1, v - 1);
  return Graph(6, edges);
}

// Relabeling 1->1, 6->2, 3->3, 5->4, 4->5, 2->6 that moves the 4-clique to the front.
inline Permutation six_vertex_relabel() { return Permutation({0, 5, 2, 4, 3, 1}); }

inline std::vector<std::uint8_t> parse_grid(const std::vector<std::string>& rows) {
  std::vector<std::uint8_t> out;
  for (const auto& r : rows)
    for (char c : r) out.push_back(c == '1' ? 1 : 0);
  return out;
}

// Standard normal draw by Box-Muller.
inline double standard_normal(cliqueorder::Rng& rng) {
  const double u = cliqueorder::uniform_open01(rng), v = cliqueorder::uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
}

// Minimum assignment cost by enumerating every permutation.
inline double brute_force_assignment(const Eigen::MatrixXd& c) {
  const auto n = static_cast<std::size_t>(c.rows());
  std::vector<std::size_t> col(n);
  std::iota(col.begin(), col.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col[r]));
    best = std::min(best, s);
  } while (std::next_permutation(col.begin(), col.end()));
  return best;
}

// Largest clique by testing every vertex subset (n <= 20).
inline std::size_t subset_clique_number(const Graph& g) {
  const std::size_t n = g.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (k <= best) continue;
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u)
      if ((mask >> u) & 1U)
        for (std::size_t v = u + 1; v < n && ok; ++v)
          if (((mask >> v) & 1U) && !g.adjacent(u, v)) ok = false;
    if (ok) best = k;
  }
  return best;
}

// K_k on vertices scattered by a seeded shuffle, plus isolated vertices.
inline std::pair<Graph, std::vector<cliqueorder::Vertex>> planted_clique(std::size_t n, std::size_t k,
                                                                         std::uint64_t seed) {
  std::vector<cliqueorder::Vertex> ids(n);
  std::iota(ids.begin(), ids.end(), cliqueorder::Vertex{0});
  cliqueorder::Rng rng(seed);
  cliqueorder::shuffle(ids, rng);
  std::vector<cliqueorder::Vertex> members(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) edges.emplace_back(members[i], members[j]);
  std::sort(members.begin(), members.end());
  return {Graph(n, edges), members};
}

}  // namespace testsupport
