#include <string>

#include "CLI11.hpp"

#include "infodecomp/version.hpp"
#include "infodecomp_cli/run.hpp"

int main(int argc, char** argv) {
  using infodecomp::cli::RunConfig;

  CLI::App app{
      "Dual-coordinate decomposition of probability distributions on "
      "finite posets"};
  app.set_version_flag("--version", std::string(infodecomp::version_string));
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", cfg.output,
                    "Write the JSON report here instead of stdout");
    sub->add_option("--theta-tol", cfg.solver.theta_tol,
                    "Convergence threshold on the theta residual");
    sub->add_option("--eta-tol", cfg.solver.eta_tol,
                    "Acceptance threshold on the off-target eta residual");
    sub->add_option("--max-bisect", cfg.solver.max_bisect,
                    "Bisection budget per single-target solve");
    sub->add_option("--max-outer", cfg.solver.max_outer,
                    "Budget of cyclic sweeps over the target set");
    sub->add_option("--bracket-grid", cfg.solver.bracket_grid,
                    "Grid resolution of the fallback bracket scan");
    return sub;
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Input JSON file")->required();
    return sub;
  };
  const char* subset_help =
      "Element set: a label, labels joined with '|', a comma-separated "
      "label list, ∅/EMPTY, or ALL";

  auto* coords = add_input(add_common(app.add_subcommand(
      "coords", "Dual coordinates (theta, eta, psi) of a distribution")));
  (void)coords;

  auto* project = add_input(add_common(app.add_subcommand(
      "project",
      "Mixed distribution of p and q over a target set, with the "
      "Pythagorean split of D(p,q)")));
  project->add_option("--q-input", cfg.q_input, "Second distribution JSON")
      ->required();
  project->add_option("--subset", cfg.subset, subset_help);

  auto* decompose = add_input(add_common(app.add_subcommand(
      "decompose", "Decompose D(p,q) along an increasing chain of subsets")));
  decompose->add_option("--q-input", cfg.q_input,
                        "Second distribution JSON (default: uniform)");
  decompose->add_option("--chain", cfg.chain,
                        "Chain of subsets separated by ';', e.g. \"∅;x1;ALL\"")
      ->required();

  auto* entropy = add_input(add_common(app.add_subcommand(
      "entropy", "Entropy, and its split through a knock-down when "
                 "--subset is given")));
  entropy->add_option("--subset", cfg.subset, subset_help);

  auto* gain_scan = add_input(add_common(app.add_subcommand(
      "gain-scan",
      "Information gain, G statistic and p-value per non-bottom element")));
  gain_scan->add_option("--subset", cfg.subset,
                        "Restrict the scan to these elements");
  gain_scan->add_flag("--all-singletons", cfg.all_singletons,
                      "Scan every non-bottom element (the default)");
  gain_scan->add_option("--samples", cfg.samples,
                        "Sample count behind the distribution");
  gain_scan->add_option("--dof", cfg.dof,
                        "Override the chi-squared degrees of freedom");
  gain_scan->add_option("--parallel", cfg.parallel,
                        "Worker threads (default: all cores)");

  auto* metric = add_input(add_common(app.add_subcommand(
      "metric", "Subvaluation, pairwise distances and weighted covering "
                "graph of a distribution")));
  metric->add_option("--subset", cfg.subset,
                     "Restrict distance pairs to these elements");
  metric->add_option("--parallel", cfg.parallel,
                     "Worker threads (default: all cores)");

  auto* gtest = add_input(add_common(app.add_subcommand(
      "gtest", "Likelihood-ratio test that the target interactions vanish")));
  gtest->add_option("--subset", cfg.subset, subset_help)->required();
  gtest->add_option("--samples", cfg.samples,
                    "Sample count behind the distribution");
  gtest->add_option("--dof", cfg.dof,
                    "Override the chi-squared degrees of freedom");

  auto* mi = add_input(add_common(app.add_subcommand(
      "mi", "Mutual information of a joint table and its refinements")));
  mi->add_option("--subset", cfg.subset,
                 "Targets for mixed conditionals and the two-part split");
  mi->add_option("--coarse", cfg.coarse, "Coarse level of one refined term");
  mi->add_option("--fine", cfg.fine, "Fine level of one refined term");
  mi->add_option("--chain", cfg.chain,
                 "Chain of subsets separated by ';' to split the MI along");
  mi->add_flag("--all-singletons", cfg.all_singletons,
               "Refined MI of every singleton, with the ranking");
  mi->add_option("--smooth", cfg.smooth,
                 "Additive smoothing mass for zero cells");

  auto* learn = add_common(app.add_subcommand(
      "learn", "Learn a poset model from a dataset at a support threshold"));
  learn->add_option("--transactions", cfg.transactions,
                    "Transaction file: one transaction per line");
  learn->add_option("--vectors", cfg.vectors,
                    "Integer vector file: CSV, one point per row");
  learn->add_option("--points", cfg.points, "Clustered points CSV");
  learn->add_option("--clusters", cfg.clusters,
                    "Cluster metadata JSON (assignments, representatives)");
  learn->add_option("--sigma", cfg.sigma, "Support threshold in (0, 1]")
      ->required();
  learn->add_option("--events", cfg.events,
                    "Number of distinct items (default: largest id seen)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return infodecomp::cli::run(cfg);
}
