#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace cliqueorder {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Formulas below are written 1-based; storage is 0-based, so entry (i, j) in
// storage is formula(i + 1, j + 1) and max(i, j) + 1 is the 1-based shell.

// King-move distance from the corner: max(i, j) - 1.
inline IntMatrix chebyshev(std::size_t n) {
  if (n == 0) throw std::invalid_argument("chebyshev: n must be positive");
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c(i, j) = static_cast<std::int64_t>(std::max(i, j));
  return c;
}

// n - max(i, j): largest in the upper-left corner, zero on the last shell.
inline IntMatrix chebyshev_complement(std::size_t n) {
  if (n == 0) throw std::invalid_argument("chebyshev_complement: n must be positive");
  IntMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c(i, j) = static_cast<std::int64_t>(n - 1 - std::max(i, j));
  return c;
}

// Symmetric cost matrix whose entries depend only on the shell max(i, j).
// Only the n shell values are stored.
template <class T>
class CostMatrix {
 public:
  using value_type = T;

  CostMatrix() = default;
  explicit CostMatrix(std::vector<T> shells) : shells_(std::move(shells)) {}

  std::size_t size() const noexcept { return shells_.size(); }
  const T& operator()(std::size_t i, std::size_t j) const noexcept {
    return shells_[std::max(i, j)];
  }
  // Value on shell k (0-based), i.e. for all (i, j) with max(i, j) == k.
  const T& shell(std::size_t k) const noexcept { return shells_[k]; }

  Eigen::MatrixXd dense() const
    requires std::is_floating_point_v<T>
  {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        d(i, j) = static_cast<double>((*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    return d;
  }

 private:
  std::vector<T> shells_;
};

// (n^2)^(n - max(i, j)) as exact integers. Adjacent shells differ by exactly a
// factor of n^2.
inline CostMatrix<BigInt> cost_lemma(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cost_lemma: n must be positive");
  std::vector<BigInt> shells(n);
  const BigInt base = BigInt(n) * BigInt(n);
  BigInt w = 1;
  for (std::size_t k = n; k-- > 0;) {
    shells[k] = w;
    w *= base;
  }
  return CostMatrix<BigInt>(std::move(shells));
}

// (1 + epsilon)^((n - max(i, j)) - n/2).
inline CostMatrix<double> cost_stable(std::size_t n, double epsilon) {
  if (n == 0) throw std::invalid_argument("cost_stable: n must be positive");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("cost_stable: epsilon must be positive");
  std::vector<double> shells(n);
  const double half = static_cast<double>(n) / 2.0;
  for (std::size_t k = 0; k < n; ++k)
    shells[k] = std::pow(1.0 + epsilon, static_cast<double>(n - 1 - k) - half);
  return CostMatrix<double>(std::move(shells));
}

// Default epsilon by problem size class.
inline double default_epsilon(std::size_t n) { return n <= 100 ? 0.2 : 0.06; }

}  // namespace cliqueorder
