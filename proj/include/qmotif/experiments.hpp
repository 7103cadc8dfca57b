#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmotif/common.hpp"
#include "qmotif/estimators.hpp"
#include "qmotif/graph.hpp"

namespace qmotif {

/// Configuration of an Erdős–Rényi estimation sweep. Instance seeds are
/// derived from the master seed by the documented chain
///   derive_seed(derive_seed(derive_seed(master, n), bits(p_e)), index)
/// with bits(x) the raw IEEE-754 pattern of x, so adding values to any list
/// never perturbs the instances of existing cells.
struct SweepConfig {
  std::vector<int> n_values;
  std::vector<double> edge_probs;
  int instances = 100;
  std::vector<MotifKind> motifs;
  double epsilon = 0.05;
  double delta = 0.05;
  double ae_scale = 1.0;
  std::uint64_t master_seed = 1;
  std::string raw_out;  // optional per-instance estimate dump
};

/// Aggregated results for one (n, p_e, motif, method) cell. Instances whose
/// graph has no edges are skipped and counted; a cell whose usable instances
/// all have zero true count is flagged instead of dividing by zero.
struct SweepCell {
  int n = 0;
  double p_e = 0.0;
  MotifKind motif = MotifKind::triangle();
  EstimatorConfig::Method method = EstimatorConfig::Method::povm;
  double epsilon = 0.0;
  double delta = 0.0;
  int instances_used = 0;
  int skipped = 0;
  std::uint64_t shots_or_queries = 0;
  double mean_true_count = 0.0;
  double normalized_rmse = std::numeric_limits<double>::quiet_NaN();
  bool flagged = false;
};

struct SweepReport {
  std::vector<SweepCell> cells;
};

/// √(mean((estimate − truth)²)) / mean(truth).
inline double normalized_rmse(const std::vector<double>& estimates,
                              const std::vector<double>& truths) {
  if (estimates.size() != truths.size() || estimates.empty())
    throw std::invalid_argument("normalized_rmse: need equal-length nonempty inputs");
  double mean_truth = 0.0, mean_sq_err = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    mean_truth += truths[i];
    const double err = estimates[i] - truths[i];
    mean_sq_err += err * err;
  }
  mean_truth /= static_cast<double>(truths.size());
  mean_sq_err /= static_cast<double>(truths.size());
  if (!(mean_truth > 0.0))
    throw std::domain_error("normalized_rmse: mean of true values is zero");
  return std::sqrt(mean_sq_err) / mean_truth;
}

inline SweepConfig parse_sweep_config(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sweep config: ") + e.what());
  }
  SweepConfig cfg;
  try {
    cfg.n_values = j.at("n").get<std::vector<int>>();
    cfg.edge_probs = j.at("p_e").get<std::vector<double>>();
    cfg.instances = j.at("instances").get<int>();
    for (const auto& name : j.at("motifs")) {
      auto kind = MotifKind::parse(name.get<std::string>());
      if (!kind) throw ParseError("sweep config: unknown motif \"" + name.get<std::string>() + "\"");
      cfg.motifs.push_back(*kind);
    }
    cfg.epsilon = j.at("eps").get<double>();
    cfg.delta = j.at("delta").get<double>();
    if (j.contains("ae_scale")) cfg.ae_scale = j.at("ae_scale").get<double>();
    cfg.master_seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("raw_out")) cfg.raw_out = j.at("raw_out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sweep config: ") + e.what());
  }
  for (int n : cfg.n_values)
    if (n < 1) throw ParseError("sweep config: n values must be positive");
  for (double p : cfg.edge_probs)
    if (!(p >= 0.0 && p <= 1.0)) throw ParseError("sweep config: p_e values must lie in [0, 1]");
  if (cfg.instances < 2) throw ParseError("sweep config: need at least 2 instances");
  if (cfg.motifs.empty()) throw ParseError("sweep config: need at least one motif");
  return cfg;
}

namespace detail {

inline std::uint64_t instance_seed(std::uint64_t master, int n, double p_e, int index) {
  std::uint64_t s = derive_seed(master, static_cast<std::uint64_t>(n));
  s = derive_seed(s, std::bit_cast<std::uint64_t>(p_e));
  return derive_seed(s, static_cast<std::uint64_t>(index));
}

inline std::string format_g17(double x) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

}  // namespace detail

/// Runs the full sweep: per cell, seeded ER instances, exact true counts, and
/// both estimators at the configured (ε, δ). Deterministic given the master
/// seed; instances and cells are evaluated in a fixed order.
inline SweepReport run_sweep(const SweepConfig& cfg, std::ostream* raw = nullptr) {
  SweepReport report;
  if (raw) *raw << "n,p_e,motif,method,instance,seed,true_count,estimate\n";
  for (int n : cfg.n_values) {
    for (double p_e : cfg.edge_probs) {
      struct MotifData {
        std::vector<double> truths;
        std::vector<double> povm_estimates;
        std::vector<double> ae_estimates;
        std::uint64_t shots = 0, queries = 0;
      };
      std::vector<MotifData> data(cfg.motifs.size());
      int skipped = 0;
      for (int i = 0; i < cfg.instances; ++i) {
        const std::uint64_t seed = detail::instance_seed(cfg.master_seed, n, p_e, i);
        const Graph g = er_generate(n, p_e, seed);
        if (g.edge_count() == 0) {
          ++skipped;
          continue;
        }
        for (std::size_t m = 0; m < cfg.motifs.size(); ++m) {
          const MotifKind motif = cfg.motifs[m];
          const double truth = static_cast<double>(count_motifs(g, motif));
          EstimatorConfig est;
          est.epsilon = cfg.epsilon;
          est.delta = cfg.delta;
          est.ae_scale = cfg.ae_scale;
          est.method = EstimatorConfig::Method::povm;
          est.seed = derive_seed(derive_seed(seed, motif.tag()), 1);
          const EstimateResult povm = estimate_count(g, motif, est);
          est.method = EstimatorConfig::Method::ae;
          est.seed = derive_seed(derive_seed(seed, motif.tag()), 2);
          const EstimateResult ae = estimate_count(g, motif, est);
          data[m].truths.push_back(truth);
          data[m].povm_estimates.push_back(povm.count_hat);
          data[m].ae_estimates.push_back(ae.count_hat);
          data[m].shots = povm.shots_or_queries;
          data[m].queries = ae.shots_or_queries;
          if (raw) {
            *raw << n << "," << detail::format_g17(p_e) << "," << motif.name() << ",povm," << i
                 << "," << seed << "," << detail::format_g17(truth) << ","
                 << detail::format_g17(povm.count_hat) << "\n";
            *raw << n << "," << detail::format_g17(p_e) << "," << motif.name() << ",ae," << i << ","
                 << seed << "," << detail::format_g17(truth) << ","
                 << detail::format_g17(ae.count_hat) << "\n";
          }
        }
      }
      for (std::size_t m = 0; m < cfg.motifs.size(); ++m) {
        for (auto method : {EstimatorConfig::Method::povm, EstimatorConfig::Method::ae}) {
          SweepCell cell;
          cell.n = n;
          cell.p_e = p_e;
          cell.motif = cfg.motifs[m];
          cell.method = method;
          cell.epsilon = cfg.epsilon;
          cell.delta = cfg.delta;
          cell.instances_used = static_cast<int>(data[m].truths.size());
          cell.skipped = skipped;
          cell.shots_or_queries =
              method == EstimatorConfig::Method::povm ? data[m].shots : data[m].queries;
          double mean_truth = 0.0;
          for (double t : data[m].truths) mean_truth += t;
          if (cell.instances_used > 0) mean_truth /= cell.instances_used;
          cell.mean_true_count = mean_truth;
          if (cell.instances_used == 0 || !(mean_truth > 0.0)) {
            cell.flagged = true;
          } else {
            const auto& estimates = method == EstimatorConfig::Method::povm
                                        ? data[m].povm_estimates
                                        : data[m].ae_estimates;
            cell.normalized_rmse = normalized_rmse(estimates, data[m].truths);
          }
          report.cells.push_back(cell);
        }
      }
    }
  }
  // Sorted output order: (n, p_e, motif name, method name).
  std::sort(report.cells.begin(), report.cells.end(), [](const SweepCell& a, const SweepCell& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.p_e != b.p_e) return a.p_e < b.p_e;
    if (a.motif.name() != b.motif.name()) return a.motif.name() < b.motif.name();
    return method_name(a.method) < method_name(b.method);
  });
  return report;
}

/// CSV emission with fixed 17-significant-digit formatting so reruns diff
/// byte-identically. Flagged cells print "nan" in the rmse column.
inline void emit_csv(const SweepReport& report, std::ostream& out) {
  out << "n,p_e,motif,method,eps,delta,instances,mean_true_count,normalized_rmse,skipped\n";
  for (const SweepCell& cell : report.cells) {
    out << cell.n << "," << detail::format_g17(cell.p_e) << "," << cell.motif.name() << ","
        << method_name(cell.method) << "," << detail::format_g17(cell.epsilon) << ","
        << detail::format_g17(cell.delta) << "," << cell.instances_used << ","
        << detail::format_g17(cell.mean_true_count) << ","
        << detail::format_g17(cell.normalized_rmse) << "," << cell.skipped << "\n";
  }
}

}  // namespace qmotif
