#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cliqueorder/random.hpp"

namespace cliqueorder {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

// Undirected simple graph stored as a dense adjacency bit matrix. Each row is
// padded to a whole number of 64-bit words so rows can be AND-ed directly.
class Graph {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Graph() = default;

  // Builds a graph on n vertices. Duplicate edges are merged; self-loops and
  // out-of-range endpoints throw std::invalid_argument.
  Graph(std::size_t n, std::span<const Edge> edges)
      : n_(n), words_((n + kWordBits - 1) / kWordBits), bits_(n_ * words_, 0) {
    for (const auto& [u, v] : edges) {
      if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop");
      if (!adjacent(u, v)) {
        set(u, v);
        set(v, u);
        ++edges_;
      }
    }
  }

  explicit Graph(std::size_t n) : Graph(n, std::span<const Edge>{}) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool adjacent(Vertex u, Vertex v) const noexcept {
    return (bits_[u * words_ + v / kWordBits] >> (v % kWordBits)) & 1U;
  }

  std::span<const Word> row(Vertex v) const noexcept {
    return {bits_.data() + v * words_, words_};
  }

  std::size_t degree(Vertex v) const noexcept {
    std::size_t d = 0;
    for (Word w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
  }

  std::size_t max_degree() const noexcept {
    std::size_t best = 0;
    for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
  }

  // Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v)
        if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  void set(Vertex u, Vertex v) noexcept {
    bits_[u * words_ + v / kWordBits] |= Word{1} << (v % kWordBits);
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::size_t edges_ = 0;
  std::vector<Word> bits_;
};

// Bijection on {0..n-1}. position(v) is the new position of original vertex v;
// vertex_at(i) is the original vertex placed at position i. As a 0/1 matrix P,
// P(v, position(v)) = 1, so the nonadjacency matrix of the relabeled graph is
// P^T M P.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::size_t> positions) : pos_(std::move(positions)) {
    std::vector<bool> seen(pos_.size(), false);
    for (std::size_t p : pos_) {
      if (p >= pos_.size() || seen[p]) throw std::invalid_argument("not a permutation");
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return Permutation(std::move(p));
  }

  // Builds the permutation that puts order[i] at position i.
  static Permutation from_order(std::span<const Vertex> order) {
    std::vector<std::size_t> p(order.size(), order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] >= order.size() || p[order[i]] != order.size())
        throw std::invalid_argument("not a permutation");
      p[order[i]] = i;
    }
    return Permutation(std::move(p));
  }

  std::size_t size() const noexcept { return pos_.size(); }
  std::size_t position(Vertex v) const noexcept { return pos_[v]; }
  std::span<const std::size_t> positions() const noexcept { return pos_; }

  std::vector<Vertex> order() const {
    std::vector<Vertex> out(pos_.size());
    for (Vertex v = 0; v < pos_.size(); ++v) out[pos_[v]] = v;
    return out;
  }

  Permutation inverse() const { return Permutation(order()); }

  // (a.then(b)).position(v) == b.position(a.position(v))
  Permutation then(const Permutation& next) const {
    if (next.size() != size()) throw std::invalid_argument("permutation length mismatch");
    std::vector<std::size_t> p(size());
    for (Vertex v = 0; v < size(); ++v) p[v] = next.position(pos_[v]);
    return Permutation(std::move(p));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> pos_;
};

struct VertexFeatures {
  std::vector<std::size_t> degree;
  std::vector<double> local_density;
};

// Each unordered pair is an edge independently with probability p.
inline Graph er_generate(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("er_generate: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("er_generate: p must be in [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (uniform01(rng) < p) edges.emplace_back(u, v);
  return Graph(n, edges);
}

inline Graph relabel(const Graph& g, const Permutation& perm) {
  if (perm.size() != g.size()) throw std::invalid_argument("relabel: permutation length mismatch");
  auto edges = g.edges();
  for (auto& [u, v] : edges) {
    u = perm.position(u);
    v = perm.position(v);
  }
  return Graph(g.size(), edges);
}

// Row-major 0/1 matrix of J - I - A.
inline std::vector<std::uint8_t> nonadjacency_matrix(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      m[i * n + j] = (i != j && !g.adjacent(i, j)) ? 1 : 0;
  return m;
}

inline std::vector<std::uint8_t> adjacency_matrix(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j) m[i * n + j] = g.adjacent(i, j) ? 1 : 0;
  return m;
}

// Appends isolated vertices up to target_n.
inline Graph zero_pad(const Graph& g, std::size_t target_n) {
  if (target_n < g.size()) throw std::invalid_argument("zero_pad: target smaller than graph");
  const auto edges = g.edges();
  return Graph(target_n, edges);
}

// Non-increasing degree; ties by ascending original index.
inline Permutation degree_order(const Graph& g) {
  std::vector<Vertex> order(g.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::vector<std::size_t> deg(g.size());
  for (Vertex v = 0; v < g.size(); ++v) deg[v] = g.degree(v);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return deg[a] > deg[b]; });
  return Permutation::from_order(order);
}

inline Permutation random_order(const Graph& g, std::uint64_t seed) {
  std::vector<Vertex> order(g.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  Rng rng(seed);
  shuffle(order, rng);
  return Permutation::from_order(order);
}

inline VertexFeatures features(const Graph& g) {
  const std::size_t n = g.size();
  VertexFeatures f;
  f.degree.resize(n);
  f.local_density.assign(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    const std::size_t d = g.degree(v);
    f.degree[v] = d;
    if (d < 2) continue;
    // Each edge inside the neighborhood is seen once from each endpoint.
    std::size_t twice = 0;
    const auto nv = g.row(v);
    for (Vertex u = 0; u < n; ++u) {
      if (!g.adjacent(v, u)) continue;
      const auto nu = g.row(u);
      for (std::size_t w = 0; w < nv.size(); ++w)
        twice += static_cast<std::size_t>(std::popcount(nv[w] & nu[w]));
    }
    f.local_density[v] = static_cast<double>(twice / 2) /
                         (static_cast<double>(d) * static_cast<double>(d - 1) / 2.0);
  }
  return f;
}

}  // namespace cliqueorder
