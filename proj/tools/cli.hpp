#pragma once

// Command implementations behind the cliqueorder executable. Each command
// writes its results to the given streams and returns a process exit code.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliqueorder/bench.hpp"
#include "cliqueorder/dimacs.hpp"
#include "cliqueorder/graph.hpp"
#include "cliqueorder/oracle.hpp"
#include "cliqueorder/perm_engine.hpp"
#include "cliqueorder/solve.hpp"

namespace cliqueorder::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCounterexample = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Optimizer settings given on the command line or in a config file; unset
// fields keep the size-dependent defaults.
struct OptimizerFlags {
  std::optional<double> tau, gamma, decode_gamma, alpha, epsilon, lr;
  std::optional<std::size_t> sinkhorn_iters, outer_iters, restarts;

  OptimizerConfig resolve(std::size_t n, std::uint64_t seed) const {
    OptimizerConfig c = OptimizerConfig::for_size(n);
    if (tau) c.tau = *tau;
    if (gamma) c.gamma = *gamma;
    if (decode_gamma) c.decode_gamma = *decode_gamma;
    if (alpha) c.alpha = *alpha;
    if (epsilon) c.epsilon = *epsilon;
    if (lr) c.learning_rate = *lr;
    if (sinkhorn_iters) c.sinkhorn_iters = *sinkhorn_iters;
    if (outer_iters) c.outer_iters = *outer_iters;
    if (restarts) c.restarts = *restarts;
    c.seed = seed;
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

inline Strategy parse_strategy(const std::string& s) {
  if (s == "random") return Strategy::kRandom;
  if (s == "degree") return Strategy::kDegree;
  if (s == "learned") return Strategy::kLearned;
  throw UsageError("unknown ordering '" + s + "' (expected random|degree|learned)");
}

inline std::string format_p(double p) {
  std::ostringstream s;
  s << p;
  return s.str();
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
  if (!out) throw UsageError("write failed for " + path.string());
}

inline std::string generator_comment(std::size_t n, double p, std::uint64_t seed) {
  return "er n=" + std::to_string(n) + " p=" + format_p(p) + " seed=" + std::to_string(seed);
}

// Recovers (p, seed) from a comment written by `gen`, if present.
struct GeneratorTag {
  double p = 0.0;
  std::uint64_t seed = 0;
};

inline std::optional<GeneratorTag> parse_generator_comment(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("c er ", 0) != 0) continue;
    std::size_t n = 0;
    GeneratorTag tag;
    if (std::sscanf(line.c_str(), "c er n=%zu p=%lf seed=%" SCNu64, &n, &tag.p, &tag.seed) == 3) return tag;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::size_t n = 100;
  double p = 0.5;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
};

inline std::string gen_filename(std::size_t n, double p, std::uint64_t seed) {
  return "er_n" + std::to_string(n) + "_p" + format_p(p) + "_s" + std::to_string(seed) + ".clq";
}

inline int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.n == 0) throw UsageError("--n must be positive");
  if (!(a.p >= 0.0 && a.p <= 1.0)) throw UsageError("--p must be in [0,1]");
  std::filesystem::create_directories(a.out_dir);
  for (std::size_t i = 0; i < a.count; ++i) {
    const std::uint64_t s = a.seed + i;
    const Graph g = er_generate(a.n, a.p, s);
    const auto path = a.out_dir / gen_filename(a.n, a.p, s);
    write_file(path, to_dimacs(g, generator_comment(a.n, a.p, s)));
    out << path.string() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::filesystem::path graph;
  std::string ordering = "degree";
  std::uint64_t seed = 0;
  double t_limit = kDefaultTLimit;
  bool show_clique = false;
  OptimizerFlags opt;
};

inline nlohmann::json solve_json(const Graph& g, const SolveReport& rep, std::optional<GeneratorTag> tag,
                                 std::optional<std::uint64_t> seed, bool show_clique) {
  nlohmann::json j;
  j["n"] = g.size();
  if (tag) j["p"] = tag->p;
  if (seed) j["seed"] = *seed;
  j["ordering"] = rep.ordering;
  j["omega"] = rep.result.clique.size();
  j["steps"] = rep.result.steps;
  j["search_seconds"] = rep.result.wall_time;
  if (rep.learned) j["inference_seconds"] = rep.ordering_seconds;
  if (show_clique) {
    std::vector<std::size_t> one_based;
    for (Vertex v : rep.result.clique) one_based.push_back(v + 1);
    j["clique"] = one_based;
  }
  return j;
}

inline int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const std::string text = read_file(a.graph);
  const Graph g = from_dimacs(text);
  const Strategy s = parse_strategy(a.ordering);
  OrderingStrategy strategy;
  std::optional<std::uint64_t> seed;
  switch (s) {
    case Strategy::kRandom:
      strategy = RandomOrdering{a.seed};
      seed = a.seed;
      break;
    case Strategy::kDegree:
      strategy = DegreeOrdering{};
      break;
    case Strategy::kLearned:
      strategy = LearnedOrdering{a.opt.resolve(g.size(), a.seed)};
      seed = a.seed;
      break;
  }
  warm_up();
  const auto rep = solve_with_ordering(g, strategy, a.t_limit);
  const auto tag = parse_generator_comment(text);
  if (!seed && tag) seed = tag->seed;
  out << solve_json(g, rep, tag, seed, a.show_clique).dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::size_t n = 100;
  std::vector<double> p_list{0.5};
  std::size_t instances = 100;
  std::vector<std::string> strategies{"random", "learned", "degree"};
  std::uint64_t seed = 0;
  std::optional<std::size_t> pad_to;
  double t_limit = kDefaultTLimit;
  std::size_t jobs = 1;
  bool order_cost = false;
  std::optional<std::filesystem::path> out;
  OptimizerFlags opt;
};

inline int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.instances < 1) throw UsageError("--instances must be >= 1");
  if (a.n == 0) throw UsageError("--n must be positive");
  if (a.pad_to && *a.pad_to < a.n) throw UsageError("--pad-to must be >= --n");
  BenchOptions o;
  o.n = a.n;
  o.p_list = a.p_list;
  for (double p : o.p_list)
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p values must be in [0,1]");
  o.instances = a.instances;
  o.strategies.clear();
  for (const auto& s : a.strategies) o.strategies.push_back(parse_strategy(s));
  o.seed = a.seed;
  o.pad_to = a.pad_to;
  o.t_limit = a.t_limit;
  o.jobs = a.jobs;
  o.learned = a.opt.resolve(a.pad_to.value_or(a.n), a.seed);
  const auto rows = run_bench(o);
  if (a.out) {
    std::ostringstream csv;
    write_bench_csv(csv, rows, a.order_cost);
    write_file(*a.out, csv.str());
  } else {
    write_bench_csv(out, rows, a.order_cost);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- learn-order

struct LearnArgs {
  std::filesystem::path graph;
  std::optional<std::filesystem::path> out;
  std::uint64_t seed = 0;
  OptimizerFlags opt;
};

inline std::string format_permutation(const Permutation& p) {
  std::ostringstream s;
  for (std::size_t v = 0; v < p.size(); ++v) s << (v ? " " : "") << p.position(v);
  s << '\n';
  return s.str();
}

inline Permutation parse_permutation(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::size_t> pos;
  for (std::size_t x; in >> x;) pos.push_back(x);
  if (!in.eof()) throw UsageError("permutation file: expected whitespace-separated indices");
  return Permutation(std::move(pos));
}

// 0/1 grid, one row per line, no separators.
inline std::string format_matrix(const Graph& g) {
  const auto m = adjacency_matrix(g);
  const std::size_t n = g.size();
  std::string s;
  s.reserve(n * (n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s.push_back(m[i * n + j] ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

struct LearnOutputs {
  std::filesystem::path perm_file;
  std::filesystem::path adjacency_file;
};

inline LearnOutputs learn_output_paths(const LearnArgs& a) {
  std::filesystem::path base = a.out ? *a.out : std::filesystem::path(a.graph).replace_extension(".learned");
  return {std::filesystem::path(base.string() + ".perm"), std::filesystem::path(base.string() + ".adj")};
}

inline int cmd_learn_order(const LearnArgs& a, std::ostream& out) {
  const Graph g = from_dimacs(read_file(a.graph));
  const auto cfg = a.opt.resolve(g.size(), a.seed);
  const auto res = optimize_ordering(g, cfg);
  const auto paths = learn_output_paths(a);
  write_file(paths.perm_file, format_permutation(res.perm));
  write_file(paths.adjacency_file, format_matrix(relabel(g, res.perm)));
  nlohmann::json j;
  j["n"] = g.size();
  j["hard_loss"] = res.hard_loss;
  j["permutation_file"] = paths.perm_file.string();
  j["adjacency_file"] = paths.adjacency_file.string();
  out << j.dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- verify-lemma

struct LemmaArgs {
  std::size_t max_exhaustive_n = 5;
  std::size_t sampled_n = 7;
  std::size_t samples = 100;
  double sampled_p = 0.5;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;
};

inline std::string big_to_string(const BigInt& x) { return x.str(); }

inline nlohmann::json lemma_json(const oracle::LemmaReport& r) {
  nlohmann::json j;
  j["graph_id"] = r.graph_id;
  j["n"] = r.n;
  j["omega"] = r.omega;
  std::vector<std::size_t> pos(r.minimizing_perm.positions().begin(), r.minimizing_perm.positions().end());
  j["minimizing_perm"] = pos;
  j["clique_in_prefix"] = r.clique_in_prefix;
  // Exact integers are emitted as decimal strings.
  j["min_loss"] = big_to_string(r.min_loss);
  j["vacuous"] = r.vacuous;
  j["upper_bound_holds"] = r.upper_bound_holds;
  j["lower_bound_holds"] = r.lower_bound_holds;
  j["upper_bound"] = big_to_string(r.upper_bound);
  j["lower_bound"] = big_to_string(r.lower_bound);
  j["max_prefix_loss"] = big_to_string(r.max_prefix_loss);
  if (r.min_nonprefix_loss) j["min_nonprefix_loss"] = big_to_string(*r.min_nonprefix_loss);
  j["passed"] = r.passed();
  return j;
}

// Every labeled graph on n vertices, indexed by its edge bitmask over pairs
// (0,1), (0,2), ..., (n-2,n-1).
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  std::vector<Edge> edges;
  std::size_t bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if ((mask >> bit) & 1U) edges.emplace_back(u, v);
  return Graph(n, edges);
}

struct LemmaSummary {
  std::size_t exhaustive_graphs = 0;
  std::vector<std::size_t> exhaustive_by_n;  // index n: labeled graphs on exactly n vertices
  std::size_t sampled_graphs = 0;
  std::size_t failures = 0;
  std::size_t vacuous = 0;
};

inline LemmaSummary run_lemma_campaign(const LemmaArgs& a, std::ostream* jsonl) {
  if (a.max_exhaustive_n > oracle::kMaxPermOracleN)
    throw UsageError("--max-exhaustive-n exceeds the oracle limit of " + std::to_string(oracle::kMaxPermOracleN));
  if (a.samples > 0 && (a.sampled_n < 1 || a.sampled_n > oracle::kMaxPermOracleN))
    throw UsageError("--sampled-n must be in [1, " + std::to_string(oracle::kMaxPermOracleN) + "]");
  LemmaSummary sum;
  auto record = [&](const oracle::LemmaReport& r) {
    if (!r.passed()) ++sum.failures;
    if (r.vacuous) ++sum.vacuous;
    if (jsonl) *jsonl << lemma_json(r).dump() << '\n';
  };
  sum.exhaustive_by_n.assign(a.max_exhaustive_n + 1, 0);
  for (std::size_t n = 1; n <= a.max_exhaustive_n; ++n) {
    const std::size_t pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      record(oracle::lemma_verify(graph_from_mask(n, mask),
                                  "all_n" + std::to_string(n) + "_m" + std::to_string(mask)));
      ++sum.exhaustive_graphs;
      ++sum.exhaustive_by_n[n];
    }
  }
  for (std::size_t i = 0; i < a.samples; ++i) {
    const std::uint64_t s = a.seed + i;
    record(oracle::lemma_verify(er_generate(a.sampled_n, a.sampled_p, s),
                                "er_n" + std::to_string(a.sampled_n) + "_p" + format_p(a.sampled_p) + "_s" +
                                    std::to_string(s)));
    ++sum.sampled_graphs;
  }
  return sum;
}

inline int cmd_verify_lemma(const LemmaArgs& a, std::ostream& out) {
  std::ofstream file;
  if (a.out) {
    file.open(*a.out, std::ios::trunc);
    if (!file) throw UsageError("cannot write " + a.out->string());
  }
  const auto sum = run_lemma_campaign(a, a.out ? &file : nullptr);
  nlohmann::json j;
  j["exhaustive_graphs"] = sum.exhaustive_graphs;
  nlohmann::json by_n = nlohmann::json::object();
  for (std::size_t n = 1; n < sum.exhaustive_by_n.size(); ++n) by_n[std::to_string(n)] = sum.exhaustive_by_n[n];
  j["exhaustive_by_n"] = by_n;
  j["sampled_graphs"] = sum.sampled_graphs;
  j["vacuous"] = sum.vacuous;
  j["failures"] = sum.failures;
  j["passed"] = sum.failures == 0;
  out << j.dump() << '\n';
  return sum.failures == 0 ? kExitOk : kExitCounterexample;
}

}  // namespace cliqueorder::cli
