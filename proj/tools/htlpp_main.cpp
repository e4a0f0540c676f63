// Experiment driver: one subcommand per model. Every run writes manifest.json
// and its CSV outputs into --output-dir; exit code 0 iff all were written.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "htlpp/experiments.hpp"

namespace {

void add_shared(CLI::App& sub, htlpp::RunConfig& c) {
  sub.add_option("--alpha", c.alpha, "Tail index")->capture_default_str();
  sub.add_option("--replicates", c.replicates, "Independent replicates")->capture_default_str();
  sub.add_option("--seed,--master-seed", c.master_seed, "Master seed (falls back to HTLPP_SEED)")
      ->envname("HTLPP_SEED")
      ->capture_default_str();
  sub.add_option("--workers", c.workers, "Worker threads; results do not depend on this")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub.add_option("-o,--output-dir", c.output_dir, "Output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  htlpp::RunConfig c;
  CLI::App app{"Heavy-tailed last-passage percolation experiments"};
  app.set_version_flag("--version", htlpp::kVersion);
  app.require_subcommand(1);

  auto* discrete = app.add_subcommand("discrete", "Lattice passage times T^(n)");
  add_shared(*discrete, c);
  discrete->add_option("-n,--n", c.n, "Grid side")->capture_default_str();
  discrete->add_option("--dims", c.dims, "Lattice dimension (2 or 3)")->capture_default_str();
  discrete->add_option("--distribution", c.distribution, "Weight law")
      ->check(CLI::IsMember({"pareto", "exponential", "slowly_varying_log"}))
      ->capture_default_str();
  discrete->add_option("--weights-file", c.weights_file, "Fixture grid, row-major")
      ->check(CLI::ExistingFile);
  discrete->add_flag("--emit-tree", c.emit_tree, "Write geodesic_tree.csv for replicate 0");
  discrete->add_flag("--emit-path", c.emit_path, "Write optimal_path.csv for replicate 0");

  auto* continuum = app.add_subcommand("continuum", "Top-k truncations T_k");
  add_shared(*continuum, c);
  continuum->add_option("-k,--k", c.k, "Number of points when no ladder is given")
      ->capture_default_str();
  continuum->add_option("--k-ladder", c.k_ladder, "Values of k reported per replicate")
      ->delimiter(',');
  continuum->add_option("--dims", c.dims, "Dimension")->capture_default_str();

  auto* airy = app.add_subcommand("airy", "Traces H_u = T(e^u, e^-u) and Theta samples");
  add_shared(*airy, c);
  airy->add_option("--tau", c.tau, "Trace half-width")->capture_default_str();
  airy->add_option("--u-points", c.u_points, "Points of the u grid")->capture_default_str();
  airy->add_option("--theta-points", c.theta_points, "Points per axis of the Theta grid")
      ->capture_default_str();
  airy->add_option("--z-min", c.z_min, "Weight threshold (0: from --point-budget)")
      ->capture_default_str();
  airy->add_option("--point-budget", c.point_budget, "Expected points per unit area")
      ->capture_default_str();

  auto* greedy = app.add_subcommand("greedy", "Greedy paths, G, exponents, spectrum");
  add_shared(*greedy, c);
  greedy->add_option("--eps", c.eps, "Path resolution")->capture_default_str();
  greedy->add_option("--scale", c.scale, "Scale r of coarse exponents")->capture_default_str();
  greedy->add_option("--g-points", c.g_points, "Points of the G grid")->capture_default_str();
  greedy->add_option("--dims", c.dims, "Dimension")->capture_default_str();

  auto* stable = app.add_subcommand("stable", "Directed last passage across stable processes");
  add_shared(*stable, c);
  stable->add_option("-n,--n", c.n, "Number of processes and horizon")->capture_default_str();
  stable->add_option("-m,--m", c.m, "Steps per unit time")->capture_default_str();
  stable->add_option("--delta", c.delta, "Jump cutoff (0: from --jump-budget)")
      ->capture_default_str();
  stable->add_option("--jump-budget", c.jump_budget, "Expected jumps per unit time")
      ->capture_default_str();
  stable->add_option("--c-plus", c.c_plus, "Positive Levy weight")->capture_default_str();
  stable->add_option("--c-minus", c.c_minus, "Negative Levy weight")->capture_default_str();
  stable->add_option("--top-jumps", c.top_jumps, "Jumps used by the lower bound")
      ->capture_default_str();

  auto* converge = app.add_subcommand("converge", "KS distance of T^(n) to the continuum limit");
  add_shared(*converge, c);
  converge->add_option("-k,--k", c.k, "Reference truncation")->capture_default_str();
  converge->add_option("--n-ladder", c.n_ladder, "Grid sides")->delimiter(',');
  converge->add_option("--reference-seed", c.reference_seed,
                       "Seed of the continuum reference (0: derived)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  try {
    const htlpp::RunResult result = htlpp::run(c);
    for (const auto& f : result.files) std::cout << f.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "htlpp " << c.subcommand << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}
