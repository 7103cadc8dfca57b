// qmotif command-line tool: graph generation, reference-state emission,
// circuit verification, motif counting, estimation, and ER sweeps.
//
// Exit codes: 0 success, 1 verification/agreement failure, 2 usage or config
// error, 3 resource limit.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qmotif/circuits.hpp"
#include "qmotif/estimators.hpp"
#include "qmotif/experiments.hpp"
#include "qmotif/graph.hpp"
#include "qmotif/reference.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

qmotif::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qmotif::ParseError("cannot open graph file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return qmotif::parse_edge_list(text.str());
}

qmotif::MotifKind parse_motif_or_throw(const std::string& text) {
  auto kind = qmotif::MotifKind::parse(text);
  if (!kind)
    throw qmotif::ParseError("unknown motif \"" + text +
                             "\" (expected triangle, cycle:<k> or clique:<m>)");
  return *kind;
}

int cmd_gen(int n, double p, std::uint64_t seed, const std::string& out_path) {
  const qmotif::Graph g = qmotif::er_generate(n, p, seed);
  std::ofstream out(out_path);
  if (!out) throw qmotif::ParseError("cannot open output file " + out_path);
  qmotif::write_edge_list(g, out);
  std::cout << "wrote " << out_path << ": n=" << g.n_vertices() << " edges=" << g.edge_count()
            << "\n";
  return 0;
}

int cmd_state(const std::string& graph_path, const std::string& which, int vertex, bool directed,
              const std::string& emit_path) {
  const qmotif::Graph g = load_graph(graph_path);
  qmotif::SparseState state;
  if (which == "adjacency") {
    state = qmotif::adjacency_state(g, directed);
  } else if (which == "degree") {
    state = qmotif::degree_state(g);
  } else if (which == "neighborhood") {
    if (vertex < 0) throw qmotif::ParseError("--which neighborhood requires --vertex");
    state = qmotif::neighborhood_state(g, vertex);
  } else {
    throw qmotif::ParseError("unknown state \"" + which + "\"");
  }
  std::ofstream out(emit_path);
  if (!out) throw qmotif::ParseError("cannot open output file " + emit_path);
  qmotif::write_amplitudes_csv(state, out);
  std::cout << "wrote " << emit_path << ": " << state.amplitudes.size() << " nonzero amplitudes on "
            << state.num_qubits << " qubits\n";
  return 0;
}

int cmd_verify(const std::string& graph_path, int max_qubits, bool dump_plans) {
  const qmotif::Graph g = load_graph(graph_path);
  if (g.edge_count() == 0) {
    std::cout << "FAIL: graph has no edges, nothing to prepare\n";
    return kExitFailure;
  }
  const int n = qmotif::ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  if (2 * n + 2 > max_qubits)
    throw qmotif::ResourceError("adjacency circuit needs " + std::to_string(2 * n + 2) +
                                " qubits, --max-qubits is " + std::to_string(max_qubits));
  const std::size_t budget = std::size_t{sizeof(qmotif::Complex)} << max_qubits;
  const double tol = 1e-10;
  bool ok = true;
  std::cout << std::setprecision(15);

  auto report = [&](const std::string& name, double fidelity_value, bool gates_ok,
                    const std::vector<double>& probs) {
    bool line_ok = gates_ok && fidelity_value >= 1.0 - tol;
    std::cout << name << ": fidelity=" << fidelity_value;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      std::cout << " p" << i + 1 << "=" << probs[i];
      line_ok = line_ok && std::abs(probs[i] - 1.0) <= tol;
    }
    std::cout << " gate_counts=" << (gates_ok ? "match" : "MISMATCH")
              << (line_ok ? "" : "  <-- FAIL") << "\n";
    ok = ok && line_ok;
  };

  {
    const qmotif::CircuitPlan plan = qmotif::build_degree_circuit(g);
    if (dump_plans) qmotif::write_plan_text(plan, std::cout);
    const qmotif::ExecutionResult run = qmotif::execute(plan, budget);
    report("degree", qmotif::fidelity_with_sparse(run.state, qmotif::degree_state(g),
                                                  std::uint64_t{1} << n),
           qmotif::tally_gates(plan) == qmotif::predicted_degree_counts(g), run.postselect_probs);
  }
  for (int r = 0; r < g.n_vertices(); ++r) {
    if (g.degree(r) == 0) continue;
    const qmotif::CircuitPlan plan = qmotif::build_neighborhood_circuit(g, r);
    if (dump_plans) qmotif::write_plan_text(plan, std::cout);
    const qmotif::ExecutionResult run = qmotif::execute(plan, budget);
    report("neighborhood r=" + std::to_string(r),
           qmotif::fidelity_with_sparse(run.state, qmotif::neighborhood_state(g, r),
                                        std::uint64_t{1} << n),
           qmotif::tally_gates(plan) == qmotif::predicted_neighborhood_counts(g, r),
           run.postselect_probs);
  }
  {
    const qmotif::CircuitPlan plan = qmotif::build_adjacency_circuit(g);
    if (dump_plans) qmotif::write_plan_text(plan, std::cout);
    const qmotif::ExecutionResult run = qmotif::execute(plan, budget);
    const qmotif::GateCounts tallied = qmotif::tally_gates(plan);
    std::uint64_t nprime = 0;
    for (int r = 0; r < g.n_vertices(); ++r)
      if (g.degree(r) > 0) ++nprime;
    const bool gates_ok = tallied == qmotif::predicted_adjacency_counts(g) &&
                          tallied.toffoli_total() == nprime + 2 * g.edge_count();
    report("adjacency", qmotif::fidelity_with_sparse(run.state, qmotif::adjacency_state(g),
                                                     std::uint64_t{3} << (2 * n)),
           gates_ok, run.postselect_probs);
    std::cout << "adjacency toffoli total: " << tallied.toffoli_total() << " (N'=" << nprime
              << " + 2|E|=" << 2 * g.edge_count() << ")\n";
  }
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : kExitFailure;
}

int cmd_count(const std::string& graph_path, const std::string& motif_text,
              const std::string& method, std::uint64_t oracle_budget) {
  const qmotif::Graph g = load_graph(graph_path);
  const qmotif::MotifKind kind = parse_motif_or_throw(motif_text);
  if (method == "exact") {
    std::cout << qmotif::count_motifs(g, kind) << "\n";
    return 0;
  }
  const qmotif::SuccessProbability formula = qmotif::success_probability(g, kind);
  if (method == "formula") {
    std::cout << formula.numerator << "/" << formula.denominator << " = " << std::setprecision(17)
              << formula.value << "\n";
    return 0;
  }
  if (method == "oracle") {
    const qmotif::SuccessProbability oracle =
        qmotif::projector_expectation_oracle(g, kind, oracle_budget);
    const bool agree =
        oracle.numerator == formula.numerator && oracle.denominator == formula.denominator;
    std::cout << oracle.numerator << "/" << oracle.denominator << " = " << std::setprecision(17)
              << oracle.value << " agreement=" << (agree ? "yes" : "NO") << "\n";
    return agree ? 0 : kExitFailure;
  }
  throw qmotif::ParseError("unknown method \"" + method + "\"");
}

int cmd_estimate(const std::string& graph_path, const std::string& motif_text,
                 const std::string& method, double eps, double delta, std::uint64_t seed,
                 double ae_scale) {
  const qmotif::Graph g = load_graph(graph_path);
  const qmotif::MotifKind kind = parse_motif_or_throw(motif_text);
  qmotif::EstimatorConfig cfg;
  cfg.epsilon = eps;
  cfg.delta = delta;
  cfg.seed = seed;
  cfg.ae_scale = ae_scale;
  if (method == "povm") cfg.method = qmotif::EstimatorConfig::Method::povm;
  else if (method == "ae") cfg.method = qmotif::EstimatorConfig::Method::ae;
  else throw qmotif::ParseError("unknown method \"" + method + "\"");
  const qmotif::EstimateResult result = qmotif::estimate_count(g, kind, cfg);
  std::cout << std::setprecision(17) << "p_hat=" << result.p_hat
            << " count_hat=" << result.count_hat
            << (cfg.method == qmotif::EstimatorConfig::Method::povm ? " shots=" : " queries=")
            << result.shots_or_queries << " method=" << qmotif::method_name(result.method) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  std::ifstream in(config_path);
  if (!in) throw qmotif::ParseError("cannot open config file " + config_path);
  const qmotif::SweepConfig cfg = qmotif::parse_sweep_config(in);
  std::ofstream raw;
  std::ostream* raw_stream = nullptr;
  if (!cfg.raw_out.empty()) {
    raw.open(cfg.raw_out);
    if (!raw) throw qmotif::ParseError("cannot open raw output file " + cfg.raw_out);
    raw_stream = &raw;
  }
  const qmotif::SweepReport report = qmotif::run_sweep(cfg, raw_stream);
  std::ofstream out(out_path);
  if (!out) throw qmotif::ParseError("cannot open output file " + out_path);
  qmotif::emit_csv(report, out);
  std::cout << "wrote " << out_path << ": " << report.cells.size() << " cells\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph adjacency states and motif-count estimation"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a seeded Erdős–Rényi graph");
  int gen_n = 0;
  double gen_p = 0.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--p", gen_p, "edge probability")->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output edge-list path")->required();

  auto* state = app.add_subcommand("state", "emit a closed-form reference state as CSV");
  std::string state_graph, state_which, state_emit;
  int state_vertex = -1;
  bool state_directed = false;
  state->add_option("--graph", state_graph, "edge-list file")->required();
  state->add_option("--which", state_which, "adjacency | degree | neighborhood")->required();
  state->add_option("--vertex", state_vertex, "vertex for neighborhood states");
  state->add_flag("--directed", state_directed, "directed normalization (adjacency only)");
  state->add_option("--emit", state_emit, "output CSV path")->required();

  auto* verify = app.add_subcommand("verify", "build, simulate and check all circuit families");
  std::string verify_graph;
  int verify_max_qubits = 26;
  bool verify_dump = false;
  verify->add_option("--graph", verify_graph, "edge-list file")->required();
  verify->add_option("--max-qubits", verify_max_qubits, "simulator qubit cap");
  verify->add_flag("--dump-plans", verify_dump, "print gate listings");

  auto* count = app.add_subcommand("count", "count motifs exactly or via the success probability");
  std::string count_graph, count_motif, count_method = "exact";
  std::uint64_t count_budget = 100'000'000;
  count->add_option("--graph", count_graph, "edge-list file")->required();
  count->add_option("--motif", count_motif, "triangle | cycle:<k> | clique:<m>")->required();
  count->add_option("--method", count_method, "exact | formula | oracle");
  count->add_option("--oracle-budget", count_budget, "enumeration budget for --method oracle");

  auto* estimate = app.add_subcommand("estimate", "estimate a motif count from measurements");
  std::string est_graph, est_motif, est_method;
  double est_eps = 0.0, est_delta = 0.0, est_scale = 1.0;
  std::uint64_t est_seed = 1;
  estimate->add_option("--graph", est_graph, "edge-list file")->required();
  estimate->add_option("--motif", est_motif, "triangle | cycle:<k> | clique:<m>")->required();
  estimate->add_option("--method", est_method, "povm | ae")->required();
  estimate->add_option("--eps", est_eps, "additive error target")->required();
  estimate->add_option("--delta", est_delta, "failure probability")->required();
  estimate->add_option("--seed", est_seed, "estimator seed");
  estimate->add_option("--ae-scale", est_scale, "perturbation scale for --method ae");

  auto* sweep = app.add_subcommand("sweep", "run an ER sweep from a JSON config");
  std::string sweep_config, sweep_out;
  sweep->add_option("--config", sweep_config, "JSON config path")->required();
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_n, gen_p, gen_seed, gen_out);
    if (state->parsed())
      return cmd_state(state_graph, state_which, state_vertex, state_directed, state_emit);
    if (verify->parsed()) return cmd_verify(verify_graph, verify_max_qubits, verify_dump);
    if (count->parsed()) return cmd_count(count_graph, count_motif, count_method, count_budget);
    if (estimate->parsed())
      return cmd_estimate(est_graph, est_motif, est_method, est_eps, est_delta, est_seed, est_scale);
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out);
  } catch (const qmotif::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const qmotif::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qmotif::PostselectError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
