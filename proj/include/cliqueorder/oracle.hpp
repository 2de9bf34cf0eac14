#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliqueorder/chebyshev.hpp"
#include "cliqueorder/graph.hpp"

// Brute-force references. Nothing here shares code with the solver or the
// permutation engine beyond the Graph type.
namespace cliqueorder::oracle {

inline constexpr std::size_t kMaxCliqueOracleN = 25;
inline constexpr std::size_t kMaxPermOracleN = 8;

namespace detail {

using Mask = std::uint32_t;

inline std::vector<Mask> neighbor_masks(const Graph& g) {
  std::vector<Mask> nb(g.size(), 0);
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v = 0; v < g.size(); ++v)
      if (g.adjacent(u, v)) nb[u] |= Mask{1} << v;
  return nb;
}

// Bron-Kerbosch with Tomita pivoting over maximal cliques.
inline void bron_kerbosch(const std::vector<Mask>& nb, Mask r, Mask p, Mask x, Mask& best) {
  if (p == 0 && x == 0) {
    if (std::popcount(r) > std::popcount(best)) best = r;
    return;
  }
  Mask pivot_nb = 0;
  int best_cover = -1;
  for (Mask ux = p | x; ux != 0; ux &= ux - 1) {
    const int u = std::countr_zero(ux);
    const int cover = std::popcount(p & nb[static_cast<std::size_t>(u)]);
    if (cover > best_cover) {
      best_cover = cover;
      pivot_nb = nb[static_cast<std::size_t>(u)];
    }
  }
  for (Mask cand = p & ~pivot_nb; cand != 0; cand &= cand - 1) {
    const int v = std::countr_zero(cand);
    const Mask bit = Mask{1} << v;
    const Mask nv = nb[static_cast<std::size_t>(v)];
    bron_kerbosch(nb, r | bit, p & nv, x & nv, best);
    p &= ~bit;
    x |= bit;
  }
}

}  // namespace detail

// Exact maximum clique by maximal-clique enumeration. Throws for n > 25.
inline std::vector<Vertex> brute_force_max_clique(const Graph& g) {
  if (g.size() > kMaxCliqueOracleN)
    throw std::invalid_argument("brute_force_max_clique: n exceeds oracle limit of 25");
  if (g.size() == 0) return {};
  const auto nb = detail::neighbor_masks(g);
  const detail::Mask all =
      g.size() == 32 ? ~detail::Mask{0} : (detail::Mask{1} << g.size()) - 1;
  detail::Mask best = 0;
  detail::bron_kerbosch(nb, 0, all, 0, best);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.size(); ++v)
    if ((best >> v) & 1U) out.push_back(v);
  return out;
}

// <P^T M(A) P, D> by forming the permuted nonadjacency matrix explicitly.
template <class T>
T perm_loss(const Graph& g, const Permutation& perm, const CostMatrix<T>& cost) {
  const std::size_t n = g.size();
  if (perm.size() != n || cost.size() != n)
    throw std::invalid_argument("perm_loss: dimension mismatch");
  const auto m = nonadjacency_matrix(g);
  const auto at = perm.order();
  std::vector<std::uint8_t> permuted(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) permuted[i * n + j] = m[at[i] * n + at[j]];
  T total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (permuted[i * n + j] != 0) total += cost(i, j);
  return total;
}

template <class T>
struct PermMinimum {
  Permutation perm;
  T loss{};
};

// Global minimizer over all n! permutations. Permutations are visited in
// lexicographic order of their position arrays; the first minimizer wins.
template <class T>
PermMinimum<T> brute_force_perm_min(const Graph& g, const CostMatrix<T>& cost) {
  const std::size_t n = g.size();
  if (n > kMaxPermOracleN)
    throw std::invalid_argument("brute_force_perm_min: n exceeds oracle limit of 8");
  std::vector<std::size_t> pos(n);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  std::optional<PermMinimum<T>> best;
  do {
    Permutation p(pos);
    T loss = perm_loss(g, p, cost);
    if (!best || loss < best->loss) best = PermMinimum<T>{std::move(p), std::move(loss)};
  } while (std::next_permutation(pos.begin(), pos.end()));
  return std::move(*best);
}

struct LemmaReport {
  std::string graph_id;
  std::size_t n = 0;
  std::size_t omega = 0;
  Permutation minimizing_perm;
  BigInt min_loss;
  bool clique_in_prefix = false;
  // No permutation fails to put a maximum clique first (every omega-prefix is
  // a clique, e.g. omega == n or omega == 1).
  bool vacuous = false;
  // Every clique-prefixing permutation has loss <= (n^2 - omega^2)(n^2)^(n-omega-1).
  bool upper_bound_holds = false;
  // Every other permutation has loss >= (n^2)^(n-omega).
  bool lower_bound_holds = false;
  BigInt upper_bound;
  BigInt lower_bound;
  BigInt max_prefix_loss;
  std::optional<BigInt> min_nonprefix_loss;

  bool passed() const noexcept { return clique_in_prefix && upper_bound_holds && lower_bound_holds; }
};

// Checks that the exact minimizer of the loss under (n^2)^(n - max(i,j)) puts a
// maximum clique in the first omega positions, and that both separating bounds
// hold over every permutation.
inline LemmaReport lemma_verify(const Graph& g, std::string graph_id = {}) {
  const std::size_t n = g.size();
  if (n == 0 || n > kMaxPermOracleN)
    throw std::invalid_argument("lemma_verify: n must be in [1, 8]");
  const auto cost = cost_lemma(n);
  LemmaReport r;
  r.graph_id = std::move(graph_id);
  r.n = n;
  r.omega = brute_force_max_clique(g).size();

  const BigInt n2 = BigInt(n) * BigInt(n);
  r.lower_bound = boost::multiprecision::pow(n2, static_cast<unsigned>(n - r.omega));
  r.upper_bound = r.omega == n ? BigInt(0)
                               : (n2 - BigInt(r.omega) * BigInt(r.omega)) *
                                     boost::multiprecision::pow(n2, static_cast<unsigned>(n - r.omega - 1));

  const auto prefix_is_clique = [&](const Permutation& p) {
    const auto at = p.order();
    for (std::size_t i = 0; i < r.omega; ++i)
      for (std::size_t j = i + 1; j < r.omega; ++j)
        if (!g.adjacent(at[i], at[j])) return false;
    return true;
  };

  r.upper_bound_holds = true;
  r.lower_bound_holds = true;
  r.vacuous = true;
  std::vector<std::size_t> pos(n);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  bool first = true;
  do {
    Permutation p(pos);
    BigInt loss = perm_loss(g, p, cost);
    if (prefix_is_clique(p)) {
      if (loss > r.upper_bound) r.upper_bound_holds = false;
      if (loss > r.max_prefix_loss) r.max_prefix_loss = loss;
    } else {
      r.vacuous = false;
      if (loss < r.lower_bound) r.lower_bound_holds = false;
      if (!r.min_nonprefix_loss || loss < *r.min_nonprefix_loss) r.min_nonprefix_loss = loss;
    }
    if (first || loss < r.min_loss) {
      r.min_loss = loss;
      r.minimizing_perm = std::move(p);
      first = false;
    }
  } while (std::next_permutation(pos.begin(), pos.end()));
  r.clique_in_prefix = prefix_is_clique(r.minimizing_perm);
  return r;
}

}  // namespace cliqueorder::oracle
