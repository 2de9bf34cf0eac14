#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cliqueorder/graph.hpp"
#include "cliqueorder/random.hpp"
#include "cliqueorder/solve.hpp"

namespace cliqueorder {

enum class Strategy { kRandom, kDegree, kLearned };

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kRandom: return "random";
    case Strategy::kDegree: return "degree";
    case Strategy::kLearned: return "learned";
  }
  return "unknown";
}

struct BenchOptions {
  std::size_t n = 100;
  std::vector<double> p_list{0.5};
  std::size_t instances = 100;
  std::vector<Strategy> strategies{Strategy::kRandom, Strategy::kLearned, Strategy::kDegree};
  std::uint64_t seed = 0;
  std::optional<std::size_t> pad_to;
  double t_limit = kDefaultTLimit;
  // Worker threads; instances are independent and results are reduced in
  // instance order, so the output does not depend on this.
  std::size_t jobs = 1;
  // Learned-ordering settings; the seed is replaced per instance.
  OptimizerConfig learned;
};

struct BenchRow {
  double p = 0.0;
  Strategy strategy = Strategy::kDegree;
  std::size_t instances = 0;
  double mean_steps = 0.0;
  double mean_search_s = 0.0;
  double mean_infer_s = 0.0;  // learned only
  double mean_order_s = 0.0;  // ordering cost for every strategy
  double mean_omega = 0.0;
};

// Seed of instance i in a campaign; shared by every strategy.
inline std::uint64_t instance_seed(std::uint64_t base, std::size_t i) { return base + i; }

inline OrderingStrategy make_strategy(Strategy s, std::uint64_t graph_seed, const OptimizerConfig& learned) {
  switch (s) {
    case Strategy::kRandom: return RandomOrdering{mix_seed(graph_seed, 1)};
    case Strategy::kDegree: return DegreeOrdering{};
    case Strategy::kLearned: {
      OptimizerConfig c = learned;
      c.seed = graph_seed;
      return LearnedOrdering{c};
    }
  }
  return DegreeOrdering{};
}

struct InstanceOutcome {
  std::size_t steps = 0;
  double search_s = 0.0;
  double order_s = 0.0;
  std::size_t omega = 0;
};

// One warm-up solve, then for every p the same ER instance set is solved
// under each strategy. Search time covers the recursive solve only.
inline std::vector<BenchRow> run_bench(const BenchOptions& opt) {
  if (opt.instances < 1) throw std::invalid_argument("bench: instances must be >= 1");
  if (opt.pad_to && *opt.pad_to < opt.n) throw std::invalid_argument("bench: pad_to smaller than n");
  opt.learned.validate();
  warm_up();
  const std::size_t ns = opt.strategies.size();
  std::vector<BenchRow> rows;
  for (double p : opt.p_list) {
    std::vector<InstanceOutcome> out(opt.instances * ns);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < opt.instances;) {
        try {
          const std::uint64_t gs = instance_seed(opt.seed, i);
          Graph g = er_generate(opt.n, p, gs);
          if (opt.pad_to) g = zero_pad(g, *opt.pad_to);
          // Orderings first, then the searches back to back, so no search runs
          // on caches just flushed by an optimization.
          std::vector<Permutation> orders;
          for (std::size_t s = 0; s < ns; ++s) {
            const auto start = std::chrono::steady_clock::now();
            orders.push_back(compute_ordering(g, make_strategy(opt.strategies[s], gs, opt.learned)));
            out[i * ns + s].order_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          }
          for (std::size_t s = 0; s < ns; ++s) {
            const auto res = max_clique_dyn(g, orders[s], opt.t_limit);
            auto& o = out[i * ns + s];
            o.steps = res.steps;
            o.search_s = res.wall_time;
            o.omega = res.clique.size();
          }
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    const std::size_t jobs = std::clamp<std::size_t>(opt.jobs, 1, opt.instances);
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    const double k = static_cast<double>(opt.instances);
    for (std::size_t s = 0; s < ns; ++s) {
      BenchRow r;
      r.p = p;
      r.strategy = opt.strategies[s];
      r.instances = opt.instances;
      for (std::size_t i = 0; i < opt.instances; ++i) {
        const auto& o = out[i * ns + s];
        r.mean_steps += static_cast<double>(o.steps);
        r.mean_search_s += o.search_s;
        r.mean_order_s += o.order_s;
        r.mean_omega += static_cast<double>(o.omega);
      }
      r.mean_steps /= k;
      r.mean_search_s /= k;
      r.mean_order_s /= k;
      r.mean_omega /= k;
      if (r.strategy == Strategy::kLearned) r.mean_infer_s = r.mean_order_s;
      rows.push_back(r);
    }
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool with_order_cost = false) {
  out << "p,strategy,mean_steps,mean_search_s,mean_infer_s,mean_omega";
  if (with_order_cost) out << ",mean_order_s";
  out << '\n';
  const auto old_prec = out.precision(10);
  for (const auto& r : rows) {
    out << r.p << ',' << to_string(r.strategy) << ',' << r.mean_steps << ',' << r.mean_search_s << ',';
    if (r.strategy == Strategy::kLearned) out << r.mean_infer_s;
    out << ',' << r.mean_omega;
    if (with_order_cost) out << ',' << r.mean_order_s;
    out << '\n';
  }
  out.precision(old_prec);
}

}  // namespace cliqueorder
