#include "brieragg/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "brieragg/baselines.hpp"
#include "brieragg/numeric.hpp"
#include "brieragg/saa.hpp"

namespace brieragg {

double max_difference(const Trajectory& t) {
  if (t.step_count() == 0) {
    throw std::invalid_argument("max_difference: empty trajectory");
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.step_count(); ++i) {
    const auto& row = t.expert_cumulative[i];
    const double best = *std::min_element(row.begin(), row.end());
    worst = std::max(worst, t.learner_cumulative[i] - best);
  }
  return worst;
}

std::vector<double> regret_curve(const Trajectory& t, std::size_t expert) {
  if (expert >= t.expert_count()) {
    throw std::invalid_argument("regret_curve: expert index out of range");
  }
  std::vector<double> series(t.step_count());
  for (std::size_t i = 0; i < t.step_count(); ++i) {
    series[i] = t.expert_cumulative[i][expert] - t.learner_cumulative[i];
  }
  return series;
}

double Decision::loss(const Observation& omega,
                      const std::vector<ProbVector>& expert_preds) const {
  if (is_forecast()) return brier_loss(omega, forecast());
  const std::vector<double>& p = expert_mixture();
  if (p.size() != expert_preds.size()) {
    throw std::invalid_argument("Decision::loss: mixture size mismatch");
  }
  double expected = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    expected += p[k] * brier_loss(omega, expert_preds[k]);
  }
  return expected;
}

namespace {

class SaaLearner final : public OnlineLearner {
 public:
  SaaLearner(const OutcomeSpace& space, std::size_t expert_count, double eta)
      : state_(space, expert_count, eta) {}

  Decision decide(const std::vector<ProbVector>& preds) const override {
    return Decision{predict(state_, preds)};
  }
  void observe(const std::vector<ProbVector>& preds, const Observation& omega) override {
    state_ = update(state_, omega, preds);
  }
  std::string_view name() const override { return "saa"; }

 private:
  SaaState state_;
};

std::vector<double> per_expert_losses(const std::vector<ProbVector>& preds,
                                      const Observation& omega) {
  std::vector<double> losses(preds.size());
  for (std::size_t k = 0; k < preds.size(); ++k) losses[k] = brier_loss(omega, preds[k]);
  return losses;
}

// Baselines that only track cumulative losses share the observe step.
class LossTrackingLearner : public OnlineLearner {
 public:
  explicit LossTrackingLearner(std::size_t expert_count) : losses_(expert_count) {}

  void observe(const std::vector<ProbVector>& preds, const Observation& omega) override {
    losses_ = losses_.after_step(per_expert_losses(preds, omega));
  }

 protected:
  CumulativeLosses losses_;
};

class WdaaLearner final : public LossTrackingLearner {
 public:
  WdaaLearner(std::size_t expert_count, double c) : LossTrackingLearner(expert_count), c_(c) {}
  Decision decide(const std::vector<ProbVector>& preds) const override {
    return Decision{wdaa_predict(losses_, preds, c_)};
  }
  std::string_view name() const override { return "wdaa"; }

 private:
  double c_;
};

class WkaaLearner final : public LossTrackingLearner {
 public:
  WkaaLearner(std::size_t expert_count, double c) : LossTrackingLearner(expert_count), c_(c) {}
  Decision decide(const std::vector<ProbVector>& preds) const override {
    return Decision{wkaa_predict(losses_, preds, c_)};
  }
  std::string_view name() const override { return "wkaa"; }

 private:
  double c_;
};

class HedgeLearner final : public LossTrackingLearner {
 public:
  HedgeLearner(std::size_t expert_count, double beta, bool log_loss_transform,
               std::optional<std::uint64_t> sample_seed)
      : LossTrackingLearner(expert_count),
        beta_(beta),
        transform_(log_loss_transform),
        rng_(sample_seed ? std::optional<std::mt19937_64>(std::mt19937_64(*sample_seed))
                         : std::nullopt) {}

  Decision decide(const std::vector<ProbVector>& preds) const override {
    std::vector<double> p;
    if (beta_ == 1.0) {
      p.assign(losses_.expert_count(), 1.0 / double(losses_.expert_count()));
    } else {
      p = hedge_distribution(losses_, beta_);
    }
    if (transform_) p = saa_ha_distribution(p, beta_);
    if (rng_) {
      std::discrete_distribution<std::size_t> pick(p.begin(), p.end());
      return Decision{preds[pick(*rng_)]};
    }
    return Decision{std::move(p)};
  }
  std::string_view name() const override { return transform_ ? "saa_ha" : "hedge"; }

 private:
  double beta_;
  bool transform_;
  mutable std::optional<std::mt19937_64> rng_;
};

class FollowLeaderLearner final : public LossTrackingLearner {
 public:
  explicit FollowLeaderLearner(std::size_t expert_count) : LossTrackingLearner(expert_count) {}
  Decision decide(const std::vector<ProbVector>& preds) const override {
    return Decision{follow_leader(losses_, preds)};
  }
  std::string_view name() const override { return "follow_leader"; }
};

class SimpleAverageLearner final : public OnlineLearner {
 public:
  Decision decide(const std::vector<ProbVector>& preds) const override {
    return Decision{simple_average(preds)};
  }
  void observe(const std::vector<ProbVector>&, const Observation&) override {}
  std::string_view name() const override { return "simple_average"; }
};

class BmaLearner final : public OnlineLearner {
 public:
  explicit BmaLearner(std::size_t expert_count) : log_weights_(expert_count, 0.0) {}
  Decision decide(const std::vector<ProbVector>& preds) const override {
    return Decision{bma_predict(log_weights_, preds)};
  }
  void observe(const std::vector<ProbVector>& preds, const Observation& omega) override {
    log_weights_ = bma_update(log_weights_, omega, preds);
  }
  std::string_view name() const override { return "bma"; }

 private:
  std::vector<double> log_weights_;
};

}  // namespace

AlgorithmSpec resolve_defaults(AlgorithmSpec spec, const OutcomeSpace& space) {
  if (spec.parameter) return spec;
  if (spec.name == "saa") spec.parameter = 1.0;
  else if (spec.name == "wdaa") spec.parameter = wdaa_optimal_c(space.size());
  else if (spec.name == "wkaa") spec.parameter = 1.0;
  else if (spec.name == "hedge" || spec.name == "saa_ha") spec.parameter = 0.5;
  return spec;
}

std::unique_ptr<OnlineLearner> make_learner(const AlgorithmSpec& raw, const OutcomeSpace& space,
                                            std::size_t expert_count) {
  if (expert_count == 0) {
    throw std::invalid_argument("make_learner: need at least one expert");
  }
  const AlgorithmSpec spec = resolve_defaults(raw, space);
  const double param = spec.parameter.value_or(0.0);

  if (spec.name == "saa") {
    return std::make_unique<SaaLearner>(space, expert_count, param);
  }
  if (spec.name == "wdaa") {
    BaselineConfig::make("wdaa", param);
    return std::make_unique<WdaaLearner>(expert_count, param);
  }
  if (spec.name == "wkaa") {
    BaselineConfig::make("wkaa", param);
    return std::make_unique<WkaaLearner>(expert_count, param);
  }
  if (spec.name == "hedge") {
    BaselineConfig::make("hedge", param);
    if (param == 0.0) {
      return std::make_unique<FollowLeaderLearner>(expert_count);
    }
    return std::make_unique<HedgeLearner>(expert_count, param, false, spec.hedge_sample_seed);
  }
  if (spec.name == "saa_ha") {
    BaselineConfig::make("saa_ha", param);
    return std::make_unique<HedgeLearner>(expert_count, param, true, spec.hedge_sample_seed);
  }
  if (spec.name == "follow_leader") {
    return std::make_unique<FollowLeaderLearner>(expert_count);
  }
  if (spec.name == "simple_average") {
    return std::make_unique<SimpleAverageLearner>();
  }
  if (spec.name == "bma") {
    return std::make_unique<BmaLearner>(expert_count);
  }
  throw std::invalid_argument("make_learner: unknown algorithm '" + spec.name + "'");
}

namespace {

void check_steps(std::span<const ProtocolStep> steps) {
  if (steps.empty()) return;
  const std::size_t K = steps.front().expert_preds.size();
  const std::size_t n = steps.front().outcome.space_size();
  for (const ProtocolStep& step : steps) {
    if (step.expert_preds.size() != K) {
      throw std::invalid_argument("run_protocol: expert count changes mid-run");
    }
    if (step.outcome.space_size() != n) {
      throw std::invalid_argument("run_protocol: outcome space changes mid-run");
    }
    for (const ProbVector& p : step.expert_preds) {
      if (p.size() != n) {
        throw std::invalid_argument("run_protocol: prediction dimension mismatch");
      }
    }
  }
  if (K == 0) {
    throw std::invalid_argument("run_protocol: steps carry no expert predictions");
  }
}

}  // namespace

Trajectory run_protocol(OnlineLearner& learner, std::span<const ProtocolStep> steps,
                        const RunOptions& options) {
  check_steps(steps);
  Trajectory t;
  if (steps.empty()) return t;

  const std::size_t K = steps.front().expert_preds.size();
  std::vector<double> expert_running(K, 0.0);
  double learner_running = 0.0;

  std::size_t group_begin = 0;
  std::vector<Decision> decisions;
  while (group_begin < steps.size()) {
    std::size_t group_end = group_begin + 1;
    if (options.batch_by_date && !steps[group_begin].date.empty()) {
      while (group_end < steps.size() && steps[group_end].date == steps[group_begin].date) {
        ++group_end;
      }
    }

    decisions.clear();
    for (std::size_t i = group_begin; i < group_end; ++i) {
      decisions.push_back(learner.decide(steps[i].expert_preds));
    }
    for (std::size_t i = group_begin; i < group_end; ++i) {
      const ProtocolStep& step = steps[i];
      const Decision& d = decisions[i - group_begin];
      learner_running += d.loss(step.outcome, step.expert_preds);
      for (std::size_t k = 0; k < K; ++k) {
        expert_running[k] += brier_loss(step.outcome, step.expert_preds[k]);
      }
      t.learner_cumulative.push_back(learner_running);
      t.expert_cumulative.push_back(expert_running);
      if (options.keep_forecasts && d.is_forecast()) {
        t.forecasts.push_back(d.forecast());
      }
    }
    for (std::size_t i = group_begin; i < group_end; ++i) {
      learner.observe(steps[i].expert_preds, steps[i].outcome);
    }
    group_begin = group_end;
  }
  return t;
}

std::vector<ProtocolStep> steps_from_records(const MatchData& data) {
  std::vector<ProtocolStep> steps;
  steps.reserve(data.records.size());
  for (const MatchRecord& rec : data.records) {
    std::vector<ProbVector> preds;
    preds.reserve(rec.odds.size());
    for (const OddsVector& a : rec.odds) preds.push_back(odds_to_probs(a));
    steps.push_back(
        ProtocolStep{std::move(preds), Observation(rec.outcome, data.space), rec.date});
  }
  return steps;
}

SyntheticSpec SyntheticSpec::parse(std::string_view text) {
  SyntheticSpec spec;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("synthetic spec: expected key=value, got '" +
                                  std::string(item) + "'");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    auto as_number = [&](std::uint64_t& out) {
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw std::invalid_argument("synthetic spec: bad number '" + std::string(value) +
                                    "' for " + std::string(key));
      }
    };
    std::uint64_t num = 0;
    if (key == "n") {
      as_number(num);
      spec.outcome_count = num;
    } else if (key == "K" || key == "experts") {
      as_number(num);
      spec.expert_count = num;
    } else if (key == "N" || key == "steps") {
      as_number(num);
      spec.step_count = num;
    } else if (key == "seed") {
      as_number(num);
      spec.seed = num;
    } else if (key == "outcomes") {
      if (value == "iid") spec.outcomes = Outcomes::iid;
      else if (value == "adversarial") spec.outcomes = Outcomes::adversarial;
      else {
        throw std::invalid_argument("synthetic spec: outcomes must be iid or adversarial");
      }
    } else {
      throw std::invalid_argument("synthetic spec: unknown key '" + std::string(key) + "'");
    }
  }
  if (spec.outcome_count < 2 || spec.expert_count < 1) {
    throw std::invalid_argument("synthetic spec: need n >= 2 and K >= 1");
  }
  return spec;
}

std::vector<ProtocolStep> make_synthetic_steps(const SyntheticSpec& spec) {
  if (spec.outcomes != SyntheticSpec::Outcomes::iid) {
    throw std::invalid_argument(
        "make_synthetic_steps: adversarial outcomes depend on the learner; use run_synthetic");
  }
  const OutcomeSpace space(spec.outcome_count);
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> pick_outcome(1, spec.outcome_count);
  std::vector<ProtocolStep> steps;
  steps.reserve(spec.step_count);
  for (std::size_t i = 0; i < spec.step_count; ++i) {
    std::vector<ProbVector> preds;
    preds.reserve(spec.expert_count);
    for (std::size_t k = 0; k < spec.expert_count; ++k) {
      preds.emplace_back(sample_simplex(spec.outcome_count, rng));
    }
    steps.push_back(ProtocolStep{std::move(preds), Observation(pick_outcome(rng), space), {}});
  }
  return steps;
}

Trajectory run_synthetic(OnlineLearner& learner, const SyntheticSpec& spec,
                         const RunOptions& options) {
  if (spec.outcomes == SyntheticSpec::Outcomes::iid) {
    const std::vector<ProtocolStep> steps = make_synthetic_steps(spec);
    return run_protocol(learner, steps, options);
  }

  const OutcomeSpace space(spec.outcome_count);
  std::mt19937_64 rng(spec.seed);
  Trajectory t;
  std::vector<double> expert_running(spec.expert_count, 0.0);
  double learner_running = 0.0;
  for (std::size_t i = 0; i < spec.step_count; ++i) {
    std::vector<ProbVector> preds;
    preds.reserve(spec.expert_count);
    for (std::size_t k = 0; k < spec.expert_count; ++k) {
      preds.emplace_back(sample_simplex(spec.outcome_count, rng));
    }
    const Decision d = learner.decide(preds);

    double worst = -1.0;
    std::size_t worst_label = 1;
    for (std::size_t w = 1; w <= spec.outcome_count; ++w) {
      const double loss = d.loss(Observation(w, space), preds);
      if (loss > worst) {
        worst = loss;
        worst_label = w;
      }
    }
    const Observation omega(worst_label, space);

    learner_running += worst;
    for (std::size_t k = 0; k < spec.expert_count; ++k) {
      expert_running[k] += brier_loss(omega, preds[k]);
    }
    t.learner_cumulative.push_back(learner_running);
    t.expert_cumulative.push_back(expert_running);
    if (options.keep_forecasts && d.is_forecast()) t.forecasts.push_back(d.forecast());
    learner.observe(preds, omega);
  }
  return t;
}

ParameterGrid ParameterGrid::parse(std::string_view text) {
  ParameterGrid grid;
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    throw std::invalid_argument("parameter grid: expected lo:hi:steps");
  }
  auto parse_part = [&](std::string_view part, auto& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) {
      throw std::invalid_argument("parameter grid: bad value '" + std::string(part) + "'");
    }
  };
  parse_part(text.substr(0, c1), grid.lo);
  parse_part(text.substr(c1 + 1, c2 - c1 - 1), grid.hi);
  parse_part(text.substr(c2 + 1), grid.steps);
  if (grid.steps < 1 || grid.hi < grid.lo) {
    throw std::invalid_argument("parameter grid: need lo <= hi and steps >= 1");
  }
  return grid;
}

std::vector<double> ParameterGrid::points() const {
  std::vector<double> pts(steps);
  if (steps == 1) {
    pts[0] = lo;
    return pts;
  }
  for (std::size_t i = 0; i < steps; ++i) {
    pts[i] = lo + (hi - lo) * double(i) / double(steps - 1);
  }
  return pts;
}

SweepResult sweep(const std::string& algorithm, const ParameterGrid& grid,
                  std::span<const ProtocolStep> steps, const OutcomeSpace& space,
                  const RunOptions& options) {
  const std::vector<double> pts = grid.points();
  if (pts.empty()) throw std::invalid_argument("sweep: empty parameter grid");
  if (steps.empty()) throw std::invalid_argument("sweep: no protocol steps");
  const std::size_t K = steps.front().expert_preds.size();

  struct Slot {
    bool ok = false;
    double value = 0.0;
    std::string error;
  };
  std::vector<Slot> slots(pts.size());

  auto run_one = [&](std::size_t i) {
    try {
      auto learner = make_learner(AlgorithmSpec{algorithm, pts[i], {}}, space, K);
      const Trajectory t = run_protocol(*learner, steps, options);
      slots[i].value = max_difference(t);
      slots[i].ok = true;
    } catch (const std::exception& e) {
      slots[i].error = e.what();
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(pts.size(), std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < pts.size(); ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < pts.size(); i += workers) run_one(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  SweepResult result;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (slots[i].ok) {
      result.parameter_values.push_back(pts[i]);
      result.max_differences.push_back(slots[i].value);
    } else {
      result.diagnostics.push_back("parameter " + format_double(pts[i]) + ": " + slots[i].error);
    }
  }
  return result;
}

}  // namespace brieragg
