#include "brieragg/saa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "brieragg/numeric.hpp"

namespace brieragg {

namespace {

void check_expert_preds(const OutcomeSpace& space, std::size_t expert_count,
                        const std::vector<ProbVector>& preds, const char* where) {
  if (preds.size() != expert_count) {
    throw std::invalid_argument(std::string(where) + ": got " +
                                std::to_string(preds.size()) + " expert predictions, state has " +
                                std::to_string(expert_count) + " experts");
  }
  for (const ProbVector& p : preds) {
    if (p.size() != space.size()) {
      throw std::invalid_argument(std::string(where) + ": prediction over " +
                                  std::to_string(p.size()) + " outcomes, space has " +
                                  std::to_string(space.size()));
    }
  }
}

}  // namespace

GeneralizedPrediction::GeneralizedPrediction(std::vector<double> g) : g_(std::move(g)) {
  if (g_.size() < 2) {
    throw std::invalid_argument("GeneralizedPrediction: need at least 2 entries");
  }
  for (double gi : g_) {
    if (!std::isfinite(gi)) {
      throw std::invalid_argument("GeneralizedPrediction: non-finite entry");
    }
  }
}

SaaState::SaaState(const OutcomeSpace& space, std::size_t expert_count, double eta)
    : SaaState(space, std::vector<double>(expert_count, 0.0), eta) {}

SaaState::SaaState(const OutcomeSpace& space, std::vector<double> log_weights, double eta)
    : space_(space), log_weights_(std::move(log_weights)), eta_(eta) {
  if (log_weights_.empty()) {
    throw std::invalid_argument("SaaState: need at least one expert");
  }
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument(
        "SaaState: learning rate must lie in (0, 1]; the Brier game is not "
        "mixable for eta > 1, so no learning rate above 1 admits the additive "
        "regret guarantee (got eta = " + format_double(eta) + ")");
  }
  for (double lw : log_weights_) {
    if (!std::isfinite(lw)) {
      throw std::invalid_argument("SaaState: log weights must be finite");
    }
  }
}

GeneralizedPrediction mix_losses(const SaaState& state,
                                 const std::vector<ProbVector>& expert_preds) {
  check_expert_preds(state.outcome_space(), state.expert_count(), expert_preds, "mix_losses");
  const std::size_t n = state.outcome_space().size();
  const std::size_t K = state.expert_count();
  const double eta = state.eta();

  // loss(omega, gamma) = sum_j gamma_j^2 - 2 gamma_omega + 1
  std::vector<double> sumsq(K);
  for (std::size_t k = 0; k < K; ++k) {
    double s = 0.0;
    for (double p : expert_preds[k].values()) s += p * p;
    sumsq[k] = s;
  }

  std::vector<double> g(n);
  std::vector<double> terms(K);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t k = 0; k < K; ++k) {
      const double loss = sumsq[k] - 2.0 * expert_preds[k][w] + 1.0;
      terms[k] = state.log_weights()[k] - eta * loss;
    }
    g[w] = -log_sum_exp(terms) / eta;
  }
  return GeneralizedPrediction(std::move(g));
}

double solve_threshold(const GeneralizedPrediction& g) {
  return detail::solve_threshold(g.values());
}

ProbVector substitute(const GeneralizedPrediction& g) {
  std::vector<double> u(g.size());
  detail::substitute_into(g.values(), u);
  return ProbVector(std::move(u));
}

double max_shift(const GeneralizedPrediction& g) { return detail::max_shift(g.values()); }

SaaState update(const SaaState& state, const Observation& omega,
                const std::vector<ProbVector>& expert_preds) {
  check_expert_preds(state.outcome_space(), state.expert_count(), expert_preds, "update");
  if (omega.space_size() != state.outcome_space().size()) {
    throw std::invalid_argument("update: observation space mismatch");
  }
  std::vector<double> lw = state.log_weights();
  for (std::size_t k = 0; k < lw.size(); ++k) {
    lw[k] -= state.eta() * brier_loss(omega, expert_preds[k]);
  }
  return SaaState(state.outcome_space(), std::move(lw), state.eta());
}

ProbVector predict(const SaaState& state, const std::vector<ProbVector>& expert_preds) {
  return substitute(mix_losses(state, expert_preds));
}

namespace detail {

double solve_threshold(std::span<const double> g) {
  // F(s) = sum_i (s - g_i)^+ is piecewise linear and nondecreasing, strictly
  // increasing once positive, and unbounded, so F(s) = 2 has a unique root.
  // On the segment where exactly the m smallest entries lie below s,
  // m*s - (their sum) = 2. Scan m upward; the first candidate not exceeding
  // the next breakpoint is the root. Ties among equal g_i join the active
  // set together and are harmless.
  std::vector<double> sorted(g.begin(), g.end());
  std::sort(sorted.begin(), sorted.end());
  double prefix = 0.0;
  for (std::size_t m = 1; m <= sorted.size(); ++m) {
    prefix += sorted[m - 1];
    const double s = (2.0 + prefix) / double(m);
    if (m == sorted.size() || s <= sorted[m]) return s;
  }
  return (2.0 + prefix) / double(sorted.size());  // unreachable
}

double substitute_into(std::span<const double> g, std::span<double> out) {
  const double s = solve_threshold(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i] = std::max(s - g[i], 0.0) / 2.0;
  }
  return s;
}

double max_shift(std::span<const double> g) {
  std::vector<double> u(g.size());
  const double s = substitute_into(g, u);
  double sumsq = 0.0;
  for (double ui : u) sumsq += ui * ui;
  return s - 1.0 - sumsq;
}

}  // namespace detail

}  // namespace brieragg
