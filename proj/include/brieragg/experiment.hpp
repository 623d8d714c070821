#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "brieragg/brier_core.hpp"
#include "brieragg/odds.hpp"

namespace brieragg {

// Cumulative losses along one run: L_N for the learner and L_N^k for each
// expert, one row per completed step.
struct Trajectory {
  std::vector<double> learner_cumulative;               // N entries
  std::vector<std::vector<double>> expert_cumulative;   // N rows of K
  std::vector<ProbVector> forecasts;                    // kept on request

  std::size_t step_count() const { return learner_cumulative.size(); }
  std::size_t expert_count() const {
    return expert_cumulative.empty() ? 0 : expert_cumulative.front().size();
  }
};

// max over N of (L_N - min_k L_N^k); the inner min is taken at each N
// separately, so the benchmark expert may change along the run.
double max_difference(const Trajectory& t);

// The excess-loss series L_N^k - L_N of expert k (zero-based) over the
// learner.
std::vector<double> regret_curve(const Trajectory& t, std::size_t expert);

// A learner's per-round decision: either a probability forecast or a
// distribution over experts (for selection algorithms scored in expectation).
struct Decision {
  std::variant<ProbVector, std::vector<double>> value;

  bool is_forecast() const { return std::holds_alternative<ProbVector>(value); }
  const ProbVector& forecast() const { return std::get<ProbVector>(value); }
  const std::vector<double>& expert_mixture() const {
    return std::get<std::vector<double>>(value);
  }

  double loss(const Observation& omega, const std::vector<ProbVector>& expert_preds) const;
};

// The common predict/update surface the protocol drives. decide() must not
// mutate state (batched rounds decide from the weights at group start);
// observe() advances the state.
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;
  virtual Decision decide(const std::vector<ProbVector>& expert_preds) const = 0;
  virtual void observe(const std::vector<ProbVector>& expert_preds,
                       const Observation& omega) = 0;
  virtual std::string_view name() const = 0;
};

// Algorithm selector for the factory below. Names: saa, wdaa, wkaa, hedge,
// saa_ha, follow_leader, simple_average, bma. parameter is eta for saa,
// c for wdaa/wkaa, beta for hedge/saa_ha, ignored otherwise.
struct AlgorithmSpec {
  std::string name;
  std::optional<double> parameter;
  // When set, hedge follows a sampled expert instead of scoring in
  // expectation.
  std::optional<std::uint64_t> hedge_sample_seed;
};

// Fills in the default parameter where one applies (saa: eta = 1; wdaa: the
// bound-optimal c; wkaa: c = 1; hedge/saa_ha: beta = 1/2).
AlgorithmSpec resolve_defaults(AlgorithmSpec spec, const OutcomeSpace& space);

// Builds a fresh learner. hedge with beta = 0 is the follow-the-leader limit
// and is constructed as such; beta = 1 plays uniform expert weights.
std::unique_ptr<OnlineLearner> make_learner(const AlgorithmSpec& spec, const OutcomeSpace& space,
                                            std::size_t expert_count);

// One round of the prediction protocol.
struct ProtocolStep {
  std::vector<ProbVector> expert_preds;
  Observation outcome;
  std::string date;  // used only by batch_by_date; empty dates never group
};

struct RunOptions {
  // Within a run of equal (non-empty) dates, decide every round from the
  // state at group start and apply updates only after the group ends.
  bool batch_by_date = false;
  bool keep_forecasts = false;
};

Trajectory run_protocol(OnlineLearner& learner, std::span<const ProtocolStep> steps,
                        const RunOptions& options = {});

// Expert forecasts recomputed from the odds on the fly (never cached in the
// dataset).
std::vector<ProtocolStep> steps_from_records(const MatchData& data);

struct SyntheticSpec {
  std::size_t outcome_count = 3;
  std::size_t expert_count = 5;
  std::size_t step_count = 500;
  std::uint64_t seed = 0;
  enum class Outcomes { iid, adversarial } outcomes = Outcomes::iid;

  // Parses "n=3,K=5,N=500,seed=1,outcomes=iid".
  static SyntheticSpec parse(std::string_view text);
};

// Experts are fresh uniform simplex points every round; outcomes are drawn
// uniformly (iid mode only, since adversarial outcomes depend on the
// learner's decision).
std::vector<ProtocolStep> make_synthetic_steps(const SyntheticSpec& spec);

// Runs the protocol on synthetic data. In adversarial mode each round's
// outcome maximizes the learner's per-round loss (smallest label on ties).
Trajectory run_synthetic(OnlineLearner& learner, const SyntheticSpec& spec,
                         const RunOptions& options = {});

struct ParameterGrid {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;  // number of grid points, >= 1

  static ParameterGrid parse(std::string_view text);  // "lo:hi:steps"
  std::vector<double> points() const;
};

// One independent run per surviving grid point; a failed run drops its point
// and records a diagnostic instead.
struct SweepResult {
  std::vector<double> parameter_values;
  std::vector<double> max_differences;
  std::vector<std::string> diagnostics;
};

// Fresh-state run per grid point; points are evaluated in parallel and merged
// back by index, so the result is deterministic.
SweepResult sweep(const std::string& algorithm, const ParameterGrid& grid,
                  std::span<const ProtocolStep> steps, const OutcomeSpace& space,
                  const RunOptions& options = {});

}  // namespace brieragg
