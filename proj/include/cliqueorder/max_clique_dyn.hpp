#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cliqueorder/graph.hpp"

namespace cliqueorder {

inline constexpr double kDefaultTLimit = 0.025;

// Candidate vertices with a parallel color array; colors[i] belongs to order[i].
struct ColorClasses {
  std::vector<Vertex> order;
  std::vector<std::size_t> colors;
};

struct CliqueResult {
  std::vector<Vertex> clique;  // ascending vertex ids
  std::size_t steps = 0;
  double wall_time = 0.0;  // seconds spent in the search itself
};

// Vertices in position order: the first max_degree get colors 1..max_degree,
// the rest max_degree + 1. Color i never exceeds i + 1, so it bounds the clique
// number of the prefix ending at i.
inline ColorClasses initial_coloring(const Permutation& order, const Graph& g) {
  if (order.size() != g.size()) throw std::invalid_argument("initial_coloring: length mismatch");
  const std::size_t delta = g.max_degree();
  ColorClasses cc;
  cc.order = order.order();
  cc.colors.resize(cc.order.size());
  for (std::size_t i = 0; i < cc.order.size(); ++i) cc.colors[i] = i < delta ? i + 1 : delta + 1;
  return cc;
}

namespace detail {

class ClassBits {
 public:
  ClassBits(std::size_t classes, std::size_t words) : words_(words), bits_(classes * words, 0) {}

  bool touches(std::size_t k, std::span<const Graph::Word> row) const noexcept {
    const Graph::Word* c = bits_.data() + k * words_;
    for (std::size_t w = 0; w < words_; ++w)
      if (c[w] & row[w]) return true;
    return false;
  }
  void insert(std::size_t k, Vertex v) noexcept {
    bits_[k * words_ + v / Graph::kWordBits] |= Graph::Word{1} << (v % Graph::kWordBits);
  }

 private:
  std::size_t words_;
  std::vector<Graph::Word> bits_;
};

}  // namespace detail

// Greedy sequential coloring in candidate order. Vertices colored below k_min
// stay at the front in their input order; the rest follow grouped by ascending
// color, insertion order within a class.
inline ColorClasses color_sort(std::span<const Vertex> candidates, const Graph& g,
                               std::size_t k_min) {
  if (k_min < 1) throw std::invalid_argument("color_sort: k_min must be >= 1");
  const std::size_t m = candidates.size();
  detail::ClassBits classes(m + 1, g.words_per_row());
  std::vector<std::vector<Vertex>> members(m + 1);
  std::vector<std::size_t> color_of(m);
  std::size_t max_color = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Vertex v = candidates[i];
    const auto row = g.row(v);
    std::size_t k = 1;
    while (k <= max_color && classes.touches(k, row)) ++k;
    max_color = std::max(max_color, k);
    classes.insert(k, v);
    members[k].push_back(v);
    color_of[i] = k;
  }
  ColorClasses out;
  out.order.reserve(m);
  out.colors.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (color_of[i] < k_min) {
      out.order.push_back(candidates[i]);
      out.colors.push_back(color_of[i]);
    }
  }
  for (std::size_t k = k_min; k <= max_color; ++k) {
    for (Vertex v : members[k]) {
      out.order.push_back(v);
      out.colors.push_back(k);
    }
  }
  return out;
}

namespace detail {

class MaxCliqueDynSearch {
 public:
  MaxCliqueDynSearch(const Graph& g, double t_limit)
      : g_(g), t_limit_(t_limit), steps_(g.size() + 2, 0.0), steps_old_(g.size() + 2, 0.0) {}

  void run(ColorClasses root) {
    if (root.order.empty()) return;
    expand(std::move(root), 1);
  }

  std::vector<Vertex> best() const { return best_; }
  std::size_t all_steps() const noexcept { return all_steps_; }

 private:
  void expand(ColorClasses r, std::size_t level) {
    steps_[level] = steps_[level] + steps_[level - 1] - steps_old_[level];
    steps_old_[level] = steps_[level - 1];

    std::vector<Vertex> next;
    while (!r.order.empty()) {
      const Vertex p = r.order.back();
      const std::size_t bound = r.colors.back();
      r.order.pop_back();
      r.colors.pop_back();
      if (clique_.size() + bound <= best_.size()) return;

      clique_.push_back(p);
      assert(is_clique_extension(p));
      next.clear();
      for (Vertex v : r.order)
        if (g_.adjacent(p, v)) next.push_back(v);

      if (!next.empty()) {
        if (steps_[level] / static_cast<double>(all_steps_) < t_limit_) sort_by_local_degree(next);
        const std::size_t k_min =
            best_.size() + 1 > clique_.size() ? best_.size() + 1 - clique_.size() : 1;
        ColorClasses child = color_sort(next, g_, k_min);
        steps_[level] += 1.0;
        ++all_steps_;
        expand(std::move(child), level + 1);
      } else if (clique_.size() > best_.size()) {
        best_ = clique_;
      }
      clique_.pop_back();
    }
  }

  // Non-increasing degree inside the candidate subgraph; stable on ties.
  void sort_by_local_degree(std::vector<Vertex>& cand) const {
    std::vector<Graph::Word> mask(g_.words_per_row(), 0);
    for (Vertex v : cand) mask[v / Graph::kWordBits] |= Graph::Word{1} << (v % Graph::kWordBits);
    std::vector<std::pair<std::size_t, Vertex>> keyed;
    keyed.reserve(cand.size());
    for (Vertex v : cand) {
      const auto row = g_.row(v);
      std::size_t d = 0;
      for (std::size_t w = 0; w < mask.size(); ++w)
        d += static_cast<std::size_t>(std::popcount(row[w] & mask[w]));
      keyed.emplace_back(d, v);
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; i < cand.size(); ++i) cand[i] = keyed[i].second;
  }

  bool is_clique_extension(Vertex p) const {
    for (std::size_t i = 0; i + 1 < clique_.size(); ++i)
      if (!g_.adjacent(clique_[i], p)) return false;
    return true;
  }

  const Graph& g_;
  double t_limit_;
  std::vector<double> steps_;
  std::vector<double> steps_old_;
  std::size_t all_steps_ = 1;
  std::vector<Vertex> clique_;
  std::vector<Vertex> best_;
};

}  // namespace detail

// Exact maximum clique by MaxCliqueDyn. The search always branches on the
// last candidate, so vertices at the end of `order` are expanded first;
// orderings should put likely clique members at the front. Candidates near the
// root (step ratio below t_limit) are re-sorted by degree within the candidate
// subgraph before coloring.
inline CliqueResult max_clique_dyn(const Graph& g, const Permutation& order,
                                   double t_limit = kDefaultTLimit) {
  if (order.size() != g.size()) throw std::invalid_argument("max_clique_dyn: length mismatch");
  const auto start = std::chrono::steady_clock::now();
  detail::MaxCliqueDynSearch search(g, t_limit);
  search.run(initial_coloring(order, g));
  CliqueResult result;
  result.clique = search.best();
  std::sort(result.clique.begin(), result.clique.end());
  result.steps = search.all_steps();
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

inline bool is_clique(const Graph& g, std::span<const Vertex> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (!g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

}  // namespace cliqueorder
