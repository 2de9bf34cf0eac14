#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cliqueorder/chebyshev.hpp"
#include "cliqueorder/graph.hpp"
#include "cliqueorder/hungarian.hpp"
#include "cliqueorder/random.hpp"

namespace cliqueorder {

using Matrix = Eigen::MatrixXd;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptimizerConfig {
  double tau = 2.0;             // Sinkhorn temperature
  double gamma = 0.02;          // Gumbel noise scale during optimization
  double decode_gamma = 0.0;    // Gumbel noise scale fed to the Hungarian decode
  std::size_t sinkhorn_iters = 20;
  double alpha = 40.0;          // tanh scale; logits stay in [-alpha, alpha]
  double epsilon = 0.2;         // cost_stable base is 1 + epsilon
  double learning_rate = 0.5;
  std::size_t outer_iters = 300;
  std::size_t restarts = 4;
  std::uint64_t seed = 0;

  // Defaults by size class: l = 20 and epsilon = 0.2 up to n = 100, l = 10 and
  // epsilon = 0.06 above.
  static OptimizerConfig for_size(std::size_t n) {
    OptimizerConfig c;
    c.sinkhorn_iters = n <= 100 ? 20 : 10;
    c.epsilon = default_epsilon(n);
    return c;
  }

  void validate() const {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(tau)) throw std::invalid_argument("tau must be positive");
    if (!std::isfinite(gamma) || gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (!std::isfinite(decode_gamma) || decode_gamma < 0.0)
      throw std::invalid_argument("decode_gamma must be >= 0");
    if (sinkhorn_iters < 1) throw std::invalid_argument("sinkhorn_iters must be >= 1");
    if (!positive(alpha)) throw std::invalid_argument("alpha must be positive");
    if (!positive(epsilon)) throw std::invalid_argument("epsilon must be positive");
    if (!positive(learning_rate)) throw std::invalid_argument("learning_rate must be positive");
    if (outer_iters < 1) throw std::invalid_argument("outer_iters must be >= 1");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  }
};

// Dense J - I - A.
inline Matrix nonadjacency_dense(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = (i != j && !g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j))) ? 1.0 : 0.0;
  return m;
}

// F(v, j) = alpha * tanh(deg(v)/(n-1) + density(v) + b_j) with the position
// bias b_j = alpha * (1 - 2j/(n-1)) falling linearly from +alpha to -alpha.
inline Matrix init_logits(const Graph& g, const OptimizerConfig& cfg) {
  const std::size_t n = g.size();
  const auto f = features(g);
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  Matrix logits(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t v = 0; v < n; ++v) {
    const double score = static_cast<double>(f.degree[v]) / denom + f.local_density[v];
    for (std::size_t j = 0; j < n; ++j) {
      const double bias = cfg.alpha * (1.0 - 2.0 * static_cast<double>(j) / denom);
      logits(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(j)) =
          cfg.alpha * std::tanh(score + bias);
    }
  }
  return logits;
}

// gamma * (-log(-log U)), U uniform on (0, 1).
inline Matrix gumbel_sample(std::size_t n, double gamma, std::uint64_t seed) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gumbel_sample: gamma must be >= 0");
  const auto nn = static_cast<Eigen::Index>(n);
  Matrix out(nn, nn);
  if (gamma == 0.0) {
    out.setZero();
    return out;
  }
  Rng rng(seed);
  for (Eigen::Index j = 0; j < nn; ++j)
    for (Eigen::Index i = 0; i < nn; ++i) out(i, j) = -gamma * std::log(-std::log(uniform_open01(rng)));
  return out;
}

namespace detail {

using Array = Eigen::ArrayXXd;

// Row sums of a column-major array, accumulated column by column.
inline Eigen::ArrayXd row_sums(const Array& a) {
  Eigen::ArrayXd s = Eigen::ArrayXd::Zero(a.rows());
  for (Eigen::Index j = 0; j < a.cols(); ++j) s += a.col(j);
  return s;
}

inline Eigen::ArrayXd row_maxes(const Array& a) {
  Eigen::ArrayXd m = a.col(0);
  for (Eigen::Index j = 1; j < a.cols(); ++j) m = m.max(a.col(j));
  return m;
}

// Subtracts the row log-sum-exp from x in place and writes exp of the result
// (the row softmax) to e.
inline void log_normalize_rows(Array& x, Array& e) {
  const Eigen::ArrayXd mx = row_maxes(x);
  for (Eigen::Index j = 0; j < x.cols(); ++j) e.col(j) = (x.col(j) - mx).exp();
  const Eigen::ArrayXd s = row_sums(e);
  const Eigen::ArrayXd shift = mx + s.log();
  const Eigen::ArrayXd inv = s.inverse();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    x.col(j) -= shift;
    e.col(j) *= inv;
  }
}

inline void log_normalize_cols(Array& x, Array& e) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mx = x.col(j).maxCoeff();
    e.col(j) = (x.col(j) - mx).exp();
    const double s = e.col(j).sum();
    x.col(j) -= mx + std::log(s);
    e.col(j) *= 1.0 / s;
  }
}

// Iterates have the form exp(x_ij + u_i + v_j) with potentials whose spread is
// bounded by that of x, so entries stay above exp(-2 * spread) / n. Doubles
// underflow near exp(-708); past this spread the log-domain path is used.
inline constexpr double kMultiplicativeSpread = 300.0;

enum class SinkhornPath { kAuto, kLogDomain };

// Every intermediate softmax of a forward pass, kept for the adjoint. Buffers
// are reused across calls of the same shape.
class SinkhornTape {
 public:
  const Array& result() const { return stages_.back(); }
  const std::vector<Array>& stages() const { return stages_; }

  // Each row (column) step replaces x by x - lse(x) along that axis. When the
  // input spread is moderate the same iterates are computed multiplicatively:
  // exp(x - lse(x)) is the previous stage divided by its sums, so only the
  // first stage needs an exponential.
  void forward(const Matrix& x, std::size_t iters, SinkhornPath path = SinkhornPath::kAuto) {
    if (!x.allFinite()) throw NumericalError("sinkhorn: non-finite input");
    if (iters < 1) throw std::invalid_argument("sinkhorn: iterations must be >= 1");
    stages_.resize(2 * iters);
    for (auto& st : stages_) st.resize(x.rows(), x.cols());
    logx_ = x.array();
    const bool multiplicative = path == SinkhornPath::kAuto && x.size() > 0 &&
                                x.maxCoeff() - x.minCoeff() <= kMultiplicativeSpread;
    if (!multiplicative) {
      for (std::size_t k = 0; k < iters; ++k) {
        log_normalize_rows(logx_, stages_[2 * k]);
        log_normalize_cols(logx_, stages_[2 * k + 1]);
      }
      return;
    }
    log_normalize_rows(logx_, stages_[0]);
    for (std::size_t k = 0; k < iters; ++k) {
      if (k > 0) {
        const Array& prev = stages_[2 * k - 1];
        const Eigen::ArrayXd inv = row_sums(prev).inverse();
        for (Eigen::Index j = 0; j < prev.cols(); ++j) stages_[2 * k].col(j) = prev.col(j) * inv;
      }
      const Array& cur = stages_[2 * k];
      for (Eigen::Index j = 0; j < cur.cols(); ++j)
        stages_[2 * k + 1].col(j) = cur.col(j) * (1.0 / cur.col(j).sum());
    }
  }

  // Given dL/dT in g, overwrites g with dL/dX for T = sinkhorn(X). Each
  // normalization y = x - lse(x) has adjoint dx = dy - softmax * sum(dy) along
  // the same axis.
  void backward(Array& g) const {
    g *= result();
    for (std::size_t s = stages_.size(); s-- > 0;) {
      const auto& sm = stages_[s];
      if (s % 2 == 1) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) -= sm.col(j) * g.col(j).sum();
      } else {
        const Eigen::ArrayXd rs = row_sums(g);
        for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) -= sm.col(j) * rs;
      }
    }
  }

 private:
  std::vector<Array> stages_;  // row, col, row, col, ...
  Array logx_;
};

// out = X * D for a shell cost matrix in O(n^2):
// (XD)(i, j) = s_j * sum_{k<=j} X(i,k) + sum_{k>j} X(i,k) s_k.
inline void times_shell_cost(const Matrix& x, const CostMatrix<double>& d, Matrix& out) {
  const Eigen::Index n = x.cols();
  out.resize(x.rows(), n);
  Eigen::VectorXd prefix = Eigen::VectorXd::Zero(x.rows());
  Eigen::VectorXd weighted_suffix = Eigen::VectorXd::Zero(x.rows());
  for (Eigen::Index k = 0; k < n; ++k) weighted_suffix += x.col(k) * d.shell(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < n; ++j) {
    prefix += x.col(j);
    weighted_suffix -= x.col(j) * d.shell(static_cast<std::size_t>(j));
    out.col(j) = prefix * d.shell(static_cast<std::size_t>(j)) + weighted_suffix;
  }
}

}  // namespace detail

// Alternating row/column normalization of exp(x), carried out in the log
// domain; the last operation is a column normalization.
inline Matrix sinkhorn(const Matrix& x, std::size_t iters) {
  detail::SinkhornTape tape;
  tape.forward(x, iters);
  return tape.result().matrix();
}

// <T^T M T, D> with M = J - I - A.
inline double clique_loss(const Matrix& t, const Graph& g, const Matrix& cost) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (t.rows() != n || t.cols() != n || cost.rows() != n || cost.cols() != n)
    throw std::invalid_argument("clique_loss: dimension mismatch");
  const Matrix m = nonadjacency_dense(g);
  return (t.transpose() * m * t).cwiseProduct(cost).sum();
}

inline double clique_loss(const Matrix& t, const Graph& g, const CostMatrix<double>& cost) {
  return clique_loss(t, g, cost.dense());
}

struct LossGradient {
  double loss = 0.0;
  Matrix grad;  // dL/dF
};

// Scratch space for repeated loss/gradient evaluations at one size.
struct GradientWorkspace {
  detail::SinkhornTape tape;
  Matrix input, mt, mtd;
  detail::Array adj;
};

// Loss of sinkhorn((F + noise)/tau) and its exact gradient with respect to F.
// `noise` is already scaled. Uses <T^T M T, D> = <T, M T D> and
// dL/dT = M T D^T + M^T T D = 2 M T D since both M and D are symmetric.
inline void loss_and_gradient(const Matrix& logits, const Matrix& noise, const Matrix& nonadj,
                              const CostMatrix<double>& cost, const OptimizerConfig& cfg,
                              GradientWorkspace& ws, LossGradient& out) {
  const Eigen::Index n = logits.rows();
  if (logits.cols() != n || noise.rows() != n || noise.cols() != n || nonadj.rows() != n ||
      nonadj.cols() != n || static_cast<Eigen::Index>(cost.size()) != n)
    throw std::invalid_argument("loss_gradient: dimension mismatch");
  ws.input = (logits + noise) / cfg.tau;
  ws.tape.forward(ws.input, cfg.sinkhorn_iters);
  const auto t = ws.tape.result().matrix();
  ws.mt.noalias() = nonadj * t;
  detail::times_shell_cost(ws.mt, cost, ws.mtd);
  out.loss = t.cwiseProduct(ws.mtd).sum();
  ws.adj = 2.0 * ws.mtd.array();
  ws.tape.backward(ws.adj);
  out.grad = ws.adj.matrix() / cfg.tau;
  if (!std::isfinite(out.loss) || !out.grad.allFinite())
    throw NumericalError("loss_gradient: non-finite value (tau too small?)");
}

inline LossGradient loss_and_gradient(const Matrix& logits, const Matrix& noise, const Matrix& nonadj,
                                      const CostMatrix<double>& cost, const OptimizerConfig& cfg) {
  GradientWorkspace ws;
  LossGradient out;
  loss_and_gradient(logits, noise, nonadj, cost, cfg, ws, out);
  return out;
}

inline Matrix loss_gradient(const Matrix& logits, const Matrix& noise, const Graph& g,
                            const CostMatrix<double>& cost, const OptimizerConfig& cfg) {
  return loss_and_gradient(logits, noise, nonadjacency_dense(g), cost, cfg).grad;
}

// Exact loss of a hard permutation: sum of D(pos u, pos v) over ordered
// non-adjacent pairs u != v.
inline double hard_loss(const Graph& g, const Permutation& perm, const CostMatrix<double>& cost) {
  double total = 0.0;
  for (Vertex u = 0; u < g.size(); ++u)
    for (Vertex v = 0; v < g.size(); ++v)
      if (u != v && !g.adjacent(u, v)) total += cost(perm.position(u), perm.position(v));
  return total;
}

struct OrderingResult {
  Permutation perm;
  double hard_loss = 0.0;
  std::size_t best_restart = 0;
  std::vector<double> soft_loss_trace;  // accepted soft losses of the winning chain
};

// Time-independent pieces of a chain run, exposed for tests.
struct ChainResult {
  Matrix logits;
  Matrix gumbel;  // unscaled standard Gumbel draws
  std::vector<double> soft_losses;  // loss after each iteration (accepted value)
  std::size_t rejected = 0;
};

// Gradient descent on the logits with step halving: a step that raises the
// soft loss is rejected and the learning rate halved, so the accepted loss
// never increases. Steps are taken along grad / max|grad| so the learning rate
// is measured in logit units, and logits are clipped to [-alpha, alpha].
inline ChainResult run_chain(const Graph& g, const OptimizerConfig& cfg, std::uint64_t chain_seed,
                             const Matrix& nonadj, const CostMatrix<double>& cost) {
  ChainResult chain;
  chain.gumbel = gumbel_sample(g.size(), 1.0, chain_seed);
  const Matrix noise = cfg.gamma * chain.gumbel;
  chain.logits = init_logits(g, cfg);
  double lr = cfg.learning_rate;
  GradientWorkspace ws;
  LossGradient current, next;
  loss_and_gradient(chain.logits, noise, nonadj, cost, cfg, ws, current);
  chain.soft_losses.reserve(cfg.outer_iters + 1);
  chain.soft_losses.push_back(current.loss);
  Matrix trial;
  for (std::size_t it = 0; it < cfg.outer_iters; ++it) {
    const double scale = current.grad.cwiseAbs().maxCoeff();
    if (scale == 0.0) break;
    trial = (chain.logits - (lr / scale) * current.grad).cwiseMax(-cfg.alpha).cwiseMin(cfg.alpha);
    loss_and_gradient(trial, noise, nonadj, cost, cfg, ws, next);
    if (next.loss <= current.loss) {
      chain.logits.swap(trial);
      std::swap(current, next);
    } else {
      lr *= 0.5;
      ++chain.rejected;
    }
    chain.soft_losses.push_back(current.loss);
  }
  return chain;
}

// Hungarian decode of -(F + decode_gamma * gumbel)/tau: maximizes the summed
// logit of vertex v at position perm(v).
inline Permutation decode(const Matrix& logits, const Matrix& gumbel, const OptimizerConfig& cfg) {
  const Matrix score = -(logits + cfg.decode_gamma * gumbel) / cfg.tau;
  return hungarian(score).perm;
}

// Independent restart chains from the feature-based initial logits, each with
// its own Gumbel draw; returns the decoded permutation of lowest exact loss.
inline OrderingResult optimize_ordering(const Graph& g, const OptimizerConfig& cfg) {
  cfg.validate();
  if (g.size() == 0) throw std::invalid_argument("optimize_ordering: empty graph");
  const Matrix nonadj = nonadjacency_dense(g);
  const auto cost = cost_stable(g.size(), cfg.epsilon);
  OrderingResult best;
  best.hard_loss = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    auto chain = run_chain(g, cfg, mix_seed(cfg.seed, r), nonadj, cost);
    Permutation perm = decode(chain.logits, chain.gumbel, cfg);
    const double loss = hard_loss(g, perm, cost);
    if (loss < best.hard_loss) {
      best.perm = std::move(perm);
      best.hard_loss = loss;
      best.best_restart = r;
      best.soft_loss_trace = std::move(chain.soft_losses);
    }
  }
  return best;
}

}  // namespace cliqueorder
