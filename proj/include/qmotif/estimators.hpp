#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "qmotif/common.hpp"
#include "qmotif/graph.hpp"
#include "qmotif/reference.hpp"

namespace qmotif {

/// Targets for an estimation run: additive error `epsilon` on the success
/// probability, failure probability `delta`, and the estimation method.
struct EstimatorConfig {
  enum class Method { povm, ae };

  double epsilon = 0.05;
  double delta = 0.05;
  Method method = Method::povm;
  double ae_scale = 1.0;
  std::uint64_t seed = 0;
};

inline std::string method_name(EstimatorConfig::Method m) {
  return m == EstimatorConfig::Method::povm ? "povm" : "ae";
}

struct EstimateResult {
  double p_hat = 0.0;
  double count_hat = 0.0;
  std::uint64_t shots_or_queries = 0;
  EstimatorConfig::Method method = EstimatorConfig::Method::povm;
};

namespace detail {

inline void check_eps_delta(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("estimator: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("estimator: delta must lie in (0, 1)");
}

}  // namespace detail

/// Shots for the two-outcome measurement estimator: T = ⌈ln(2/δ) / (2ε²)⌉,
/// which by Hoeffding's inequality makes Pr(|p̂ − p| ≥ ε) ≤ δ.
inline std::uint64_t hoeffding_shots(double epsilon, double delta) {
  detail::check_eps_delta(epsilon, delta);
  return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

/// Query count for the amplitude-estimation oracle model:
/// M = ⌈(1/ε)·ln(2/δ)⌉. The underlying theorem fixes only the asymptotic
/// order O((1/ε)·log(1/δ)); the constant here mirrors the POVM estimator's
/// δ-dependence and is a convention of this library.
inline std::uint64_t ae_queries(double epsilon, double delta) {
  detail::check_eps_delta(epsilon, delta);
  return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / epsilon));
}

/// Empirical frequency of T independent Bernoulli(p) trials, the classical
/// model of repeated {P, I−P} measurements.
inline double povm_estimate(double p, std::uint64_t shots, SplitMix64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("povm_estimate: p must lie in [0, 1]");
  if (shots == 0) throw std::invalid_argument("povm_estimate: shot count must be positive");
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < shots; ++t)
    if (rng.uniform01() < p) ++successes;
  return static_cast<double>(successes) / static_cast<double>(shots);
}

/// Oracle-level amplitude-estimation model. With p = sin²θ, the returned
/// estimate is p̂ = sin²θ̂ where θ̂ = θ·(1 + η) clamped to [0, π/2] and η is
/// uniform on [−scale/M, +scale/M]: the angle uncertainty shrinks as 1/M, the
/// signature of amplitude estimation, and it shrinks proportionally to θ
/// itself, which keeps the estimate informative for the tiny success
/// probabilities of rare motifs. The result is clamped so that
/// |p̂ − p| ≤ scale/M holds for every draw (for scale/M ≤ 1/2 the bound is
/// already implied by the θ parameterization). scale = 0 returns p exactly.
inline double ae_estimate(double p, std::uint64_t queries, SplitMix64& rng, double scale = 1.0) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("ae_estimate: p must lie in [0, 1]");
  if (queries == 0) throw std::invalid_argument("ae_estimate: query count must be positive");
  if (scale < 0.0) throw std::invalid_argument("ae_estimate: scale must be nonnegative");
  constexpr double half_pi = 1.5707963267948966;
  const double bound = scale / static_cast<double>(queries);
  const double theta = std::asin(std::sqrt(p));
  const double eta = (2.0 * rng.uniform01() - 1.0) * bound;
  const double theta_hat = std::clamp(theta * (1.0 + eta), 0.0, half_pi);
  const double sine = std::sin(theta_hat);
  return std::clamp(sine * sine, std::max(0.0, p - bound), std::min(1.0, p + bound));
}

/// End-to-end count estimation: p comes analytically from the exact
/// success-probability formula (the classical statistics of the quantum
/// measurement are reproduced without materializing the e_s-fold tensor
/// state), an estimator produces p̂, and the count estimate is
/// p̂ · (2|E|)^{e_s}.
inline EstimateResult estimate_count(const Graph& g, MotifKind kind, const EstimatorConfig& cfg) {
  const SuccessProbability truth = success_probability(g, kind);
  SplitMix64 rng(cfg.seed);
  EstimateResult result;
  result.method = cfg.method;
  if (cfg.method == EstimatorConfig::Method::povm) {
    result.shots_or_queries = hoeffding_shots(cfg.epsilon, cfg.delta);
    result.p_hat = povm_estimate(truth.value, result.shots_or_queries, rng);
  } else {
    result.shots_or_queries = ae_queries(cfg.epsilon, cfg.delta);
    result.p_hat = ae_estimate(truth.value, result.shots_or_queries, rng, cfg.ae_scale);
  }
  // An estimate that matches the exact probability maps back to the exact
  // count, bypassing the double rounding of value * denominator.
  result.count_hat = result.p_hat == truth.value
                         ? truth.numerator.convert_to<double>()
                         : result.p_hat * truth.denominator.convert_to<double>();
  return result;
}

}  // namespace qmotif
