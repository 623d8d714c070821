#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "brieragg/brier_core.hpp"

namespace brieragg {

// The vector of mixed losses G(omega), one entry per outcome. A value type;
// entries are in loss units and may carry an arbitrary additive shift
// (the substitution below is shift-invariant).
class GeneralizedPrediction {
 public:
  explicit GeneralizedPrediction(std::vector<double> g);

  std::size_t size() const { return g_.size(); }
  double operator[](std::size_t i) const { return g_[i]; }
  const std::vector<double>& values() const { return g_; }

 private:
  std::vector<double> g_;
};

// Immutable state of the strong aggregating algorithm: per-expert weights on
// the natural-log scale (raw weights underflow after ~700 units of cumulative
// loss) and the learning rate. update() returns a successor state.
class SaaState {
 public:
  // Fresh state with unit weights (log weight 0) for every expert.
  SaaState(const OutcomeSpace& space, std::size_t expert_count, double eta = 1.0);
  SaaState(const OutcomeSpace& space, std::vector<double> log_weights, double eta);

  const OutcomeSpace& outcome_space() const { return space_; }
  std::size_t expert_count() const { return log_weights_.size(); }
  double eta() const { return eta_; }
  const std::vector<double>& log_weights() const { return log_weights_; }

 private:
  OutcomeSpace space_;
  std::vector<double> log_weights_;
  double eta_;
};

// Mixed losses G(omega) = -(1/eta) ln sum_k w_k exp(-eta loss(omega, gamma_k)),
// evaluated with max-subtracted log-sum-exp. At eta = 1 this is the aggregating
// pseudo-algorithm's generalized prediction from unnormalized weights.
GeneralizedPrediction mix_losses(const SaaState& state,
                                 const std::vector<ProbVector>& expert_preds);

// The unique s with sum_i (s - g_i)^+ = 2, found by an exact scan of the
// sorted breakpoints (no iterative root-finding).
double solve_threshold(const GeneralizedPrediction& g);

// The substitution function: gamma_i = (s - g_i)^+ / 2 with s from
// solve_threshold. The result dominates g up to the maximal uniform shift:
// loss(i, gamma) <= g_i - max_shift(g) for every i, with equality wherever
// gamma_i > 0.
ProbVector substitute(const GeneralizedPrediction& g);

// The largest t such that (g_1 - t, ..., g_n - t) is still dominated by the
// loss profile of some prediction: t = s - 1 - sum_i u_i^2 for the
// substitution's u. Exposed for oracle testing.
double max_shift(const GeneralizedPrediction& g);

// Weight update after observing omega: log w_k -= eta * loss(omega, gamma_k).
SaaState update(const SaaState& state, const Observation& omega,
                const std::vector<ProbVector>& expert_preds);

// substitute(mix_losses(state, expert_preds)); no state change.
ProbVector predict(const SaaState& state, const std::vector<ProbVector>& expert_preds);

namespace detail {

double solve_threshold(std::span<const double> g);

// Writes (s - g_i)^+ / 2 into out; returns s.
double substitute_into(std::span<const double> g, std::span<double> out);

double max_shift(std::span<const double> g);

}  // namespace detail

}  // namespace brieragg
