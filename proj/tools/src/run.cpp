#include "infodecomp_cli/run.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "infodecomp/coordinates.hpp"
#include "infodecomp/decomposition.hpp"
#include "infodecomp/error.hpp"
#include "infodecomp/mutual_information.hpp"
#include "infodecomp/significance.hpp"
#include "infodecomp/structure_learning.hpp"
#include "infodecomp/version.hpp"

namespace infodecomp::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::vector<int> finish_level(std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

}  // namespace

std::vector<int> parse_subset(const Poset& poset, const std::string& spec) {
  std::string tok = trim(spec);
  if (tok.empty() || tok == "∅" || tok == "EMPTY") return {};
  if (tok == "ALL") {
    std::vector<int> all;
    for (int i = 1; i < poset.size(); ++i) all.push_back(i);
    return all;
  }
  if (auto idx = poset.try_index_of(tok)) return {*idx};
  std::vector<int> out;
  if (tok.find('|') != std::string::npos) {
    for (const auto& part : split(tok, '|')) {
      out.push_back(poset.index_of(trim(part)));
    }
    return finish_level(std::move(out));
  }
  for (const auto& part : split(tok, ',')) {
    out.push_back(poset.index_of(trim(part)));
  }
  return finish_level(std::move(out));
}

std::vector<std::vector<int>> parse_chain_spec(const Poset& poset,
                                               const std::string& spec) {
  std::vector<std::vector<int>> levels;
  for (const auto& level : split(spec, ';')) {
    levels.push_back(parse_subset(poset, level));
  }
  return levels;
}

namespace {

json labels_of(const Poset& poset, const std::vector<int>& idx) {
  json out = json::array();
  for (int i : idx) out.push_back(poset.label(i));
  return out;
}

json masses_to_json(const Distribution& d) {
  json out = json::object();
  for (int i = 0; i < d.poset()->size(); ++i) {
    out[d.poset()->label(i)] = d[i];
  }
  return out;
}

json stats_to_json(const Poset& poset, const SolverStats& s) {
  json out;
  out["outer_iterations"] = s.outer_iterations;
  out["final_theta_residual"] = s.final_theta_residual;
  out["final_eta_residual"] = s.final_eta_residual;
  json per = json::object();
  for (const auto& [idx, n] : s.per_target_iterations) {
    per[poset.label(idx)] = n;
  }
  out["per_target_iterations"] = std::move(per);
  return out;
}

int resolve_parallel(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(0..n-1) across `degree` threads pulling indices from a shared
// counter.  fn must confine its effects to its own slot.
void parallel_for(std::size_t n, int degree,
                  const std::function<void(std::size_t)>& fn) {
  if (degree <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
  };
  std::vector<std::thread> pool;
  int spawned = std::min<int>(degree, static_cast<int>(n)) - 1;
  pool.reserve(static_cast<std::size_t>(spawned));
  for (int t = 0; t < spawned; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

long long resolve_samples(const RunConfig& cfg, const json& input_file) {
  if (cfg.samples > 0) return cfg.samples;
  if (auto n = sample_size_of(input_file)) return *n;
  raise(errc::invalid_argument,
        "the input carries no sample count; pass --samples");
}

std::optional<int> dof_override(const RunConfig& cfg) {
  if (cfg.dof > 0) return cfg.dof;
  return std::nullopt;
}

std::optional<double> smoothing_of(const RunConfig& cfg) {
  if (cfg.smooth > 0.0) return cfg.smooth;
  return std::nullopt;
}

json cmd_coords(const RunConfig& cfg) {
  Distribution p = distribution_from_json(load_json_file(cfg.input));
  const Poset& poset = *p.poset();
  ThetaCoords theta = theta_from_p(p);
  EtaCoords eta = eta_from_p(p);
  json result;
  result["psi"] = theta.psi();
  json th = json::object(), et = json::object();
  for (int i = 0; i < poset.size(); ++i) {
    th[poset.label(i)] = theta.values[static_cast<std::size_t>(i)];
    et[poset.label(i)] = eta.values[static_cast<std::size_t>(i)];
  }
  result["theta"] = std::move(th);
  result["eta"] = std::move(et);
  return result;
}

json cmd_project(const RunConfig& cfg) {
  Distribution p = distribution_from_json(load_json_file(cfg.input));
  if (cfg.q_input.empty()) {
    raise(errc::invalid_argument, "project needs --q-input");
  }
  Distribution q = distribution_from_json(load_json_file(cfg.q_input));
  std::vector<int> targets = parse_subset(*p.poset(), cfg.subset);
  PythagorasSplit split = pythagoras_split(p, q, targets, cfg.solver);
  json result;
  result["targets"] = labels_of(*p.poset(), targets);
  result["r"] = masses_to_json(split.r);
  result["kl_p_r"] = split.kl_p_r;
  result["kl_r_q"] = split.kl_r_q;
  result["kl_p_q"] = split.kl_p_q;
  result["residual"] = split.kl_p_q - split.kl_p_r - split.kl_r_q;
  result["stats"] = stats_to_json(*p.poset(), split.stats);
  return result;
}

json cmd_decompose(const RunConfig& cfg) {
  Distribution p = distribution_from_json(load_json_file(cfg.input));
  Distribution q = cfg.q_input.empty()
                       ? uniform_distribution(p.poset())
                       : distribution_from_json(load_json_file(cfg.q_input));
  if (cfg.chain.empty()) {
    raise(errc::invalid_argument, "decompose needs --chain");
  }
  auto levels = parse_chain_spec(*p.poset(), cfg.chain);
  ChainDecomposition dec = chain_decompose(p, q, levels, cfg.solver);
  json result;
  json terms = json::array();
  for (std::size_t k = 0; k < dec.terms.size(); ++k) {
    json term;
    term["from"] = labels_of(*p.poset(), levels[k]);
    term["to"] = labels_of(*p.poset(), levels[k + 1]);
    term["kl"] = dec.terms[k];
    terms.push_back(std::move(term));
  }
  result["terms"] = std::move(terms);
  result["total"] = dec.total;
  result["direct"] = dec.direct;
  result["residual"] = dec.total - dec.direct;
  result["stats"] = stats_to_json(*p.poset(), dec.stats);
  return result;
}

json cmd_entropy(const RunConfig& cfg) {
  Distribution p = distribution_from_json(load_json_file(cfg.input));
  json result;
  if (cfg.subset.empty()) {
    result["entropy"] = entropy(p);
    result["log_cardinality"] = std::log(static_cast<double>(p.poset()->size()));
    result["kl_from_uniform"] = kl_divergence(p, uniform_distribution(p.poset()));
    return result;
  }
  std::vector<int> targets = parse_subset(*p.poset(), cfg.subset);
  EntropySplit split = entropy_split(p, targets, cfg.solver);
  result["entropy"] = split.entropy;
  result["log_cardinality"] = split.log_cardinality;
  result["targets"] = labels_of(*p.poset(), targets);
  result["kl_p_r"] = split.kl_p_r;
  result["kl_r_uniform"] = split.kl_r_uniform;
  result["residual"] =
      split.log_cardinality - split.kl_p_r - split.kl_r_uniform - split.entropy;
  result["r"] = masses_to_json(split.r);
  result["stats"] = stats_to_json(*p.poset(), split.stats);
  return result;
}

json cmd_gain_scan(const RunConfig& cfg, int degree) {
  json input_file = load_json_file(cfg.input);
  Distribution p = distribution_from_json(input_file);
  const Poset& poset = *p.poset();
  long long n_samples = resolve_samples(cfg, input_file);
  std::optional<int> dof = dof_override(cfg);

  std::vector<int> universe;
  if (!cfg.all_singletons && !cfg.subset.empty()) {
    universe = parse_subset(poset, cfg.subset);
  } else {
    for (int i = 1; i < poset.size(); ++i) universe.push_back(i);
  }

  std::vector<json> rows(universe.size());
  parallel_for(universe.size(), degree, [&](std::size_t k) {
    int x = universe[k];
    json row;
    row["element"] = poset.label(x);
    try {
      GTestResult g = g_test(p, {x}, n_samples, dof, cfg.solver);
      row["gain"] = g.lambda / (2.0 * static_cast<double>(n_samples));
      row["lambda"] = g.lambda;
      row["p_value"] = g.p_value;
    } catch (const Error& e) {
      json err;
      err["code"] = errc_name(e.code());
      err["message"] = e.what();
      row["error"] = std::move(err);
    }
    rows[k] = std::move(row);
  });

  json result;
  result["sample_size"] = n_samples;
  result["dof"] = dof ? *dof : poset.size() - 1;
  result["dof_convention"] = dof ? "override" : "|S|-1";
  json out_rows = json::array();
  for (auto& r : rows) out_rows.push_back(std::move(r));
  result["rows"] = std::move(out_rows);
  return result;
}

json cmd_metric(const RunConfig& cfg, int degree) {
  Distribution p = distribution_from_json(load_json_file(cfg.input));
  const Poset& poset = *p.poset();
  const int n = poset.size();
  const double log_n = std::log(static_cast<double>(n));

  // One knock-down per element feeds the subvaluation, every pairwise
  // distance, and the covering-edge weights.
  std::vector<std::optional<Distribution>> knock(static_cast<std::size_t>(n));
  std::vector<SolverStats> stats(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), degree, [&](std::size_t i) {
    try {
      std::vector<int> targets = poset.up_set(static_cast<int>(i));
      std::erase(targets, poset.bottom());
      MixResult res = e_project_knockdown(p, targets, cfg.solver);
      knock[i] = std::move(res.r);
      stats[i] = std::move(res.stats);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  long long outer_total = 0;
  for (const auto& s : stats) outer_total += s.outer_iterations;

  json result;
  json v = json::object();
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    values[static_cast<std::size_t>(i)] =
        log_n - kl_divergence(p, *knock[static_cast<std::size_t>(i)]);
    v[poset.label(i)] = values[static_cast<std::size_t>(i)];
  }
  result["subvaluation"] = std::move(v);

  std::vector<int> universe;
  if (!cfg.subset.empty()) {
    universe = parse_subset(poset, cfg.subset);
  } else {
    for (int i = 0; i < n; ++i) universe.push_back(i);
  }

  json distances = json::array();
  json no_join = json::array();
  for (std::size_t a = 0; a < universe.size(); ++a) {
    for (std::size_t b = a + 1; b < universe.size(); ++b) {
      int x = universe[a], y = universe[b];
      auto j = poset.join(x, y);
      if (!j) {
        no_join.push_back(json::array({poset.label(x), poset.label(y)}));
        continue;
      }
      const Distribution& rj = *knock[static_cast<std::size_t>(*j)];
      double d = kl_divergence(rj, *knock[static_cast<std::size_t>(x)]) +
                 kl_divergence(rj, *knock[static_cast<std::size_t>(y)]);
      json row;
      row["x"] = poset.label(x);
      row["y"] = poset.label(y);
      row["join"] = poset.label(*j);
      row["distance"] = d;
      distances.push_back(std::move(row));
    }
  }
  result["distances"] = std::move(distances);
  result["no_join"] = std::move(no_join);

  json edges = json::array();
  for (auto [child, parent] : poset.cover_pairs()) {
    json e;
    e["child"] = poset.label(child);
    e["parent"] = poset.label(parent);
    e["weight"] = kl_divergence(*knock[static_cast<std::size_t>(parent)],
                                *knock[static_cast<std::size_t>(child)]);
    edges.push_back(std::move(e));
  }
  result["covering_graph"] = std::move(edges);
  result["stats"] = json{{"outer_iterations", outer_total}};
  return result;
}

json cmd_gtest(const RunConfig& cfg) {
  json input_file = load_json_file(cfg.input);
  Distribution p = distribution_from_json(input_file);
  long long n_samples = resolve_samples(cfg, input_file);
  std::vector<int> targets = parse_subset(*p.poset(), cfg.subset);
  GTestResult g = g_test(p, targets, n_samples, dof_override(cfg), cfg.solver);
  json result;
  result["lambda"] = g.lambda;
  result["dof"] = g.dof;
  result["dof_convention"] = g.dof_overridden ? "override" : "|S|-1";
  result["p_value"] = g.p_value;
  result["gain"] = g.lambda / (2.0 * static_cast<double>(n_samples));
  result["I"] = labels_of(*p.poset(), g.targets);
  result["N"] = g.sample_size;
  result["stats"] = stats_to_json(*p.poset(), g.stats);
  return result;
}

json cmd_mi(const RunConfig& cfg) {
  JointTable table =
      joint_table_from_json(load_json_file(cfg.input), smoothing_of(cfg));
  const Poset& poset = *table.poset;
  json result;
  result["mi"] = mutual_information(table);

  std::vector<double> py = y_marginal(table);
  json ym = json::object();
  for (std::size_t y = 0; y < py.size(); ++y) ym[table.y_labels[y]] = py[y];
  result["y_marginal"] = std::move(ym);
  result["x_marginal"] = masses_to_json(x_marginal(table));

  json refined = json::array();
  auto add_refined = [&](const std::vector<int>& lo,
                         const std::vector<int>& hi) {
    RefinedMI ri = refined_mutual_information(table, lo, hi, cfg.solver);
    json row;
    row["coarse"] = labels_of(poset, lo);
    row["fine"] = labels_of(poset, hi);
    row["value"] = ri.value;
    refined.push_back(std::move(row));
  };

  if (!cfg.subset.empty()) {
    std::vector<int> targets = parse_subset(poset, cfg.subset);
    result["targets"] = labels_of(poset, targets);
    json conds = json::object();
    for (std::size_t y = 0; y < table.y_labels.size(); ++y) {
      conds[table.y_labels[y]] = masses_to_json(
          mixed_conditional(table, static_cast<int>(y), targets, cfg.solver));
    }
    result["mixed_conditionals"] = std::move(conds);
    std::vector<int> all;
    for (int i = 1; i < poset.size(); ++i) all.push_back(i);
    add_refined({}, targets);
    add_refined(targets, all);
  }
  if (!cfg.coarse.empty() || !cfg.fine.empty()) {
    add_refined(parse_subset(poset, cfg.coarse),
                parse_subset(poset, cfg.fine));
  }
  if (!refined.empty()) result["refined"] = std::move(refined);

  if (!cfg.chain.empty()) {
    auto levels = parse_chain_spec(poset, cfg.chain);
    MIChainDecomposition dec = mi_chain_decompose(table, levels, cfg.solver);
    json terms = json::array();
    for (std::size_t k = 0; k < dec.terms.size(); ++k) {
      json term;
      term["from"] = labels_of(poset, levels[k]);
      term["to"] = labels_of(poset, levels[k + 1]);
      term["value"] = dec.terms[k];
      terms.push_back(std::move(term));
    }
    result["chain_terms"] = std::move(terms);
    result["chain_total"] = dec.total;
  }

  if (cfg.all_singletons) {
    json rows = json::array();
    std::vector<std::pair<double, int>> order;
    for (int x = 1; x < poset.size(); ++x) {
      RefinedMI ri = refined_mutual_information(table, {}, {x}, cfg.solver);
      json row;
      row["element"] = poset.label(x);
      row["value"] = ri.value;
      rows.push_back(std::move(row));
      order.emplace_back(ri.value, x);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) {
                       return a.first > b.first;
                     });
    json ranking = json::array();
    for (const auto& [val, x] : order) ranking.push_back(poset.label(x));
    result["singletons"] = std::move(rows);
    result["ranking"] = std::move(ranking);
  }
  return result;
}

json cmd_learn(const RunConfig& cfg) {
  int sources = (!cfg.transactions.empty() ? 1 : 0) +
                (!cfg.vectors.empty() ? 1 : 0) +
                (!cfg.points.empty() || !cfg.clusters.empty() ? 1 : 0);
  if (sources != 1) {
    raise(errc::invalid_argument,
          "learn needs exactly one dataset: --transactions, --vectors, or "
          "--points with --clusters");
  }
  if (cfg.sigma <= 0.0) {
    raise(errc::invalid_argument, "learn needs --sigma in (0, 1]");
  }

  LearnedModel model = [&] {
    if (!cfg.transactions.empty()) {
      std::istringstream in(read_text_file(cfg.transactions));
      return learn_from_transactions(transactions_from_text(in, cfg.events),
                                     cfg.sigma);
    }
    if (!cfg.vectors.empty()) {
      std::istringstream in(read_text_file(cfg.vectors));
      return learn_from_int_vectors(int_vectors_from_csv(in), cfg.sigma);
    }
    if (cfg.points.empty() || cfg.clusters.empty()) {
      raise(errc::invalid_argument,
            "clustered data needs both --points and --clusters");
    }
    std::istringstream in(read_text_file(cfg.points));
    return learn_from_clusters(
        clusters_from_files(in, load_json_file(cfg.clusters)), cfg.sigma);
  }();

  return model_to_json(model);
}

json config_echo(const RunConfig& cfg, int degree) {
  json c;
  c["input"] = cfg.input;
  c["q_input"] = cfg.q_input;
  c["transactions"] = cfg.transactions;
  c["vectors"] = cfg.vectors;
  c["points"] = cfg.points;
  c["clusters"] = cfg.clusters;
  c["output"] = cfg.output;
  c["subset"] = cfg.subset;
  c["chain"] = cfg.chain;
  c["coarse"] = cfg.coarse;
  c["fine"] = cfg.fine;
  c["sigma"] = cfg.sigma;
  c["events"] = cfg.events;
  c["samples"] = cfg.samples;
  c["dof"] = cfg.dof;
  c["smooth"] = cfg.smooth;
  c["all_singletons"] = cfg.all_singletons;
  c["parallel"] = degree;
  json solver;
  solver["theta_tol"] = cfg.solver.theta_tol;
  solver["eta_tol"] = cfg.solver.eta_tol;
  solver["max_bisect"] = cfg.solver.max_bisect;
  solver["max_outer"] = cfg.solver.max_outer;
  solver["bracket_grid"] = cfg.solver.bracket_grid;
  c["solver"] = std::move(solver);
  return c;
}

std::string main_input(const RunConfig& cfg) {
  if (!cfg.input.empty()) return cfg.input;
  if (!cfg.transactions.empty()) return cfg.transactions;
  if (!cfg.vectors.empty()) return cfg.vectors;
  if (!cfg.points.empty()) return cfg.points;
  return cfg.clusters;
}

}  // namespace

int run(const RunConfig& cfg) {
  int degree = resolve_parallel(cfg.parallel);
  json report;
  report["tool"] = "infodecomp";
  report["version"] = version_string;
  report["command"] = cfg.command;
  report["config"] = config_echo(cfg, degree);

  int exit_code = 0;
  try {
    if (cfg.command == "coords") {
      report["result"] = cmd_coords(cfg);
    } else if (cfg.command == "project") {
      report["result"] = cmd_project(cfg);
    } else if (cfg.command == "decompose") {
      report["result"] = cmd_decompose(cfg);
    } else if (cfg.command == "entropy") {
      report["result"] = cmd_entropy(cfg);
    } else if (cfg.command == "gain-scan") {
      report["result"] = cmd_gain_scan(cfg, degree);
    } else if (cfg.command == "metric") {
      report["result"] = cmd_metric(cfg, degree);
    } else if (cfg.command == "gtest") {
      report["result"] = cmd_gtest(cfg);
    } else if (cfg.command == "mi") {
      report["result"] = cmd_mi(cfg);
    } else if (cfg.command == "learn") {
      report["result"] = cmd_learn(cfg);
    } else {
      raise(errc::invalid_argument, "unknown command \"" + cfg.command + "\"");
    }
  } catch (const Error& e) {
    json err;
    err["code"] = errc_name(e.code());
    err["message"] = e.what();
    std::string file = main_input(cfg);
    if (!file.empty()) err["file"] = file;
    report["error"] = std::move(err);
    exit_code = is_solver_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    json err;
    err["code"] = "internal_error";
    err["message"] = e.what();
    report["error"] = std::move(err);
    exit_code = 1;
  }

  std::string text = report.dump(2);
  text += '\n';
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output);
    if (!out) {
      std::cerr << "cannot write " << cfg.output << "\n";
      return 1;
    }
    out << text;
  }
  return exit_code;
}

}  // namespace infodecomp::cli
