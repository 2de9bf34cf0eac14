#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

using namespace cliqueorder;
using namespace cliqueorder::cli;

void add_seed(CLI::App* cmd, std::uint64_t& seed) {
  cmd->add_option("--seed", seed, "Base seed")->envname("CLIQUE_ORDER_SEED");
}

void add_optimizer_flags(CLI::App* cmd, OptimizerFlags& f) {
  cmd->add_option("--tau", f.tau, "Sinkhorn temperature");
  cmd->add_option("--gamma", f.gamma, "Gumbel noise scale");
  cmd->add_option("--decode-gamma", f.decode_gamma, "Gumbel noise scale at decode");
  cmd->add_option("--sinkhorn-iters", f.sinkhorn_iters, "Sinkhorn iterations");
  cmd->add_option("--alpha", f.alpha, "tanh scale of the initial logits");
  cmd->add_option("--epsilon", f.epsilon, "Cost base is 1 + epsilon");
  cmd->add_option("--lr", f.lr, "Learning rate");
  cmd->add_option("--outer-iters", f.outer_iters, "Gradient steps per restart");
  cmd->add_option("--restarts", f.restarts, "Independent restarts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learned vertex orderings for maximum clique search"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key = value config file");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write Erdos-Renyi graphs as DIMACS files");
  gen_cmd->add_option("--n", gen.n, "Vertices")->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "Edge probability")->capture_default_str();
  gen_cmd->add_option("--instances", gen.count, "Number of graphs")->capture_default_str();
  add_seed(gen_cmd, gen.seed);
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->capture_default_str();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one DIMACS graph; prints a JSON line");
  solve_cmd->add_option("graph", solve.graph, "DIMACS file")->required();
  solve_cmd->add_option("--ordering", solve.ordering, "random|degree|learned")
      ->check(CLI::IsMember({"random", "degree", "learned"}))
      ->capture_default_str();
  solve_cmd->add_option("--tlimit", solve.t_limit, "Re-sorting threshold")->capture_default_str();
  solve_cmd->add_flag("--show-clique", solve.show_clique, "Include the clique (1-based) in the output");
  add_seed(solve_cmd, solve.seed);
  add_optimizer_flags(solve_cmd, solve.opt);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare orderings on a set of ER graphs; prints CSV");
  bench_cmd->add_option("--n", bench.n, "Vertices")->capture_default_str();
  bench_cmd->add_option("--p", bench.p_list, "Edge probabilities")->delimiter(',');
  bench_cmd->add_option("--instances", bench.instances, "Graphs per probability")->capture_default_str();
  bench_cmd->add_option("--ordering", bench.strategies, "Strategies to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"random", "degree", "learned"}));
  bench_cmd->add_option("--pad-to", bench.pad_to, "Zero-pad every graph to this many vertices");
  bench_cmd->add_option("--tlimit", bench.t_limit, "Re-sorting threshold")->capture_default_str();
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads")->capture_default_str();
  bench_cmd->add_flag("--order-cost", bench.order_cost, "Add a mean_order_s column for every strategy");
  bench_cmd->add_option("--out", bench.out, "CSV file (default stdout)");
  add_seed(bench_cmd, bench.seed);
  add_optimizer_flags(bench_cmd, bench.opt);

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn-order", "Learn an ordering; writes <out>.perm and <out>.adj");
  learn_cmd->add_option("graph", learn.graph, "DIMACS file")->required();
  learn_cmd->add_option("--out", learn.out, "Output path prefix");
  add_seed(learn_cmd, learn.seed);
  add_optimizer_flags(learn_cmd, learn.opt);

  LemmaArgs lemma;
  auto* lemma_cmd = app.add_subcommand("verify-lemma", "Check the clique-prefix bounds by enumeration");
  lemma_cmd->add_option("--max-exhaustive-n", lemma.max_exhaustive_n, "Enumerate all graphs up to this size")
      ->capture_default_str();
  lemma_cmd->add_option("--sampled-n", lemma.sampled_n, "Size of sampled graphs")->capture_default_str();
  lemma_cmd->add_option("--samples", lemma.samples, "Number of sampled graphs")->capture_default_str();
  lemma_cmd->add_option("--p", lemma.sampled_p, "Edge probability of sampled graphs")->capture_default_str();
  lemma_cmd->add_option("--out", lemma.out, "JSON-lines report file");
  add_seed(lemma_cmd, lemma.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, std::cout);
    if (*solve_cmd) return cmd_solve(solve, std::cout);
    if (*bench_cmd) return cmd_bench(bench, std::cout);
    if (*learn_cmd) return cmd_learn_order(learn, std::cout);
    if (*lemma_cmd) return cmd_verify_lemma(lemma, std::cout);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimacsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCounterexample;
  }
  return kExitUsage;
}
