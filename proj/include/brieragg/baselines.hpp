#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "brieragg/brier_core.hpp"

namespace brieragg {

// Per-expert cumulative Brier losses. A value type: after_step returns the
// successor, validating that every increment lies in [0, 2].
class CumulativeLosses {
 public:
  explicit CumulativeLosses(std::size_t expert_count);
  CumulativeLosses(std::vector<double> losses, std::size_t step_count);

  [[nodiscard]] CumulativeLosses after_step(std::span<const double> per_step_losses) const;

  const std::vector<double>& losses() const { return losses_; }
  std::size_t expert_count() const { return losses_.size(); }
  std::size_t step_count() const { return step_count_; }

 private:
  std::vector<double> losses_;
  std::size_t step_count_;
};

enum class BaselineAlgorithm {
  wdaa,            // weighted average with aggregating-algorithm weights
  wkaa,            // weighted average with sqrt-time-damped weights
  hedge,           // expert selection by exponential weights
  saa_ha,          // hedge weights passed through the log-loss transform
  follow_leader,   // the best-so-far expert (ties averaged)
  simple_average,  // equal-weight mean
  bma,             // Bayes mixture (aggregation under log loss)
};

// Tag plus the one tunable knob: c for wdaa/wkaa, beta for hedge/saa_ha,
// unused otherwise.
struct BaselineConfig {
  BaselineAlgorithm algorithm;
  double parameter = 0.0;

  // Parses the tag and validates the parameter range (c > 0; beta in (0,1),
  // with hedge additionally admitting the boundary values: beta = 0 is the
  // follow-the-leader limit and beta = 1 means uniform weights).
  static BaselineConfig make(std::string_view name, double parameter);
};

std::string_view to_string(BaselineAlgorithm a);

// Weighted average of the expert predictions under weights exp(-L_k / c).
ProbVector wdaa_predict(const CumulativeLosses& L,
                        const std::vector<ProbVector>& expert_preds, double c);

// The c minimizing the wdaa loss bound: 8 R^2 with R^2 = 1 - 1/n, the squared
// radius of the smallest ball containing the n-simplex.
double wdaa_optimal_c(std::size_t outcome_count);

// Weighted average under weights exp(-c L_k / sqrt(N + 1)), N completed steps.
ProbVector wkaa_predict(const CumulativeLosses& L,
                        const std::vector<ProbVector>& expert_preds, double c);

// Probability of following each expert: p_k proportional to beta^{L_k}.
std::vector<double> hedge_distribution(const CumulativeLosses& L, double beta);

// Replaces hedge weights p_k with -ln(1 + (beta-1) p_k), renormalized.
std::vector<double> saa_ha_distribution(std::span<const double> p, double beta);

// Mean prediction of the experts attaining min_k L_k (absolute tie
// tolerance 1e-12).
ProbVector follow_leader(const CumulativeLosses& L,
                         const std::vector<ProbVector>& expert_preds);

ProbVector simple_average(const std::vector<ProbVector>& expert_preds);

// Posterior-weighted mean of the expert predictions, weights exp(log_weights).
// Throws std::runtime_error on pool collapse (every weight -inf).
ProbVector bma_predict(std::span<const double> log_weights,
                       const std::vector<ProbVector>& expert_preds);

// Bayes update: log w_k += ln gamma_k(omega); an expert that assigned zero to
// the observed outcome drops to -inf and is eliminated.
std::vector<double> bma_update(std::span<const double> log_weights, const Observation& omega,
                               const std::vector<ProbVector>& expert_preds);

inline constexpr double kLeaderTieTolerance = 1e-12;

}  // namespace brieragg
