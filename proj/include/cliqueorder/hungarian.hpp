#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cliqueorder/graph.hpp"

namespace cliqueorder {

struct AssignmentResult {
  // Row i is assigned to column perm.position(i).
  Permutation perm;
  double total_cost = 0.0;
};

// Minimum-cost perfect assignment on a square matrix. Shortest augmenting
// path with dual potentials (Jonker-Volgenant style), O(n^3). Rows are added
// one at a time; each phase grows a Dijkstra tree over columns using reduced
// costs until it reaches a free column, then flips the alternating path.
// Ties go to the lowest column index, so the result is deterministic.
inline AssignmentResult hungarian(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) throw std::invalid_argument("hungarian: matrix must be square");
  if (!cost.allFinite()) throw std::invalid_argument("hungarian: non-finite cost");
  const auto n = static_cast<std::size_t>(cost.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Column index n is a virtual root column; row_of[col] is the row matched to
  // col, kNone if free.
  std::vector<double> u(n, 0.0), v(n + 1, 0.0), min_slack(n + 1);
  std::vector<std::size_t> row_of(n + 1, kNone), via(n + 1, kNone);
  std::vector<char> visited(n + 1);

  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t root = n;
    row_of[root] = r;
    std::size_t col = root;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(visited.begin(), visited.end(), 0);
    do {
      visited[col] = 1;
      const std::size_t row = row_of[col];
      double delta = kInf;
      std::size_t next = kNone;
      for (std::size_t j = 0; j < n; ++j) {
        if (visited[j]) continue;
        const double reduced = cost(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) -
                               u[row] - v[j];
        if (reduced < min_slack[j]) {
          min_slack[j] = reduced;
          via[j] = col;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          next = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (visited[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      col = next;
    } while (row_of[col] != kNone);
    while (col != root) {
      const std::size_t prev = via[col];
      row_of[col] = row_of[prev];
      col = prev;
    }
  }

  std::vector<std::size_t> assigned(n);
  for (std::size_t j = 0; j < n; ++j) assigned[row_of[j]] = j;
  AssignmentResult result{Permutation(std::move(assigned)), 0.0};
  for (std::size_t i = 0; i < n; ++i)
    result.total_cost += cost(static_cast<Eigen::Index>(i),
                              static_cast<Eigen::Index>(result.perm.position(i)));
  return result;
}

}  // namespace cliqueorder
