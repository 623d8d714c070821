#include "brieragg/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "brieragg/numeric.hpp"

namespace brieragg {

namespace {

void check_pool(const CumulativeLosses& L, const std::vector<ProbVector>& preds,
                const char* where) {
  if (preds.empty()) {
    throw std::invalid_argument(std::string(where) + ": empty expert pool");
  }
  if (preds.size() != L.expert_count()) {
    throw std::invalid_argument(std::string(where) + ": " + std::to_string(preds.size()) +
                                " predictions for " + std::to_string(L.expert_count()) +
                                " tracked experts");
  }
}

ProbVector weighted_average(std::span<const double> weights,
                            const std::vector<ProbVector>& preds) {
  const std::size_t n = preds.front().size();
  std::vector<double> mix(n, 0.0);
  for (std::size_t k = 0; k < preds.size(); ++k) {
    if (preds[k].size() != n) {
      throw std::invalid_argument("expert predictions disagree on outcome count");
    }
    for (std::size_t i = 0; i < n; ++i) mix[i] += weights[k] * preds[k][i];
  }
  return ProbVector(std::move(mix));
}

}  // namespace

CumulativeLosses::CumulativeLosses(std::size_t expert_count)
    : losses_(expert_count, 0.0), step_count_(0) {
  if (expert_count == 0) {
    throw std::invalid_argument("CumulativeLosses: need at least one expert");
  }
}

CumulativeLosses::CumulativeLosses(std::vector<double> losses, std::size_t step_count)
    : losses_(std::move(losses)), step_count_(step_count) {
  if (losses_.empty()) {
    throw std::invalid_argument("CumulativeLosses: need at least one expert");
  }
  for (double l : losses_) {
    if (!(l >= 0.0)) {
      throw std::invalid_argument("CumulativeLosses: negative or NaN loss");
    }
  }
}

CumulativeLosses CumulativeLosses::after_step(std::span<const double> per_step_losses) const {
  if (per_step_losses.size() != losses_.size()) {
    throw std::invalid_argument("CumulativeLosses::after_step: expert count mismatch");
  }
  std::vector<double> next = losses_;
  for (std::size_t k = 0; k < next.size(); ++k) {
    const double inc = per_step_losses[k];
    if (!(inc >= 0.0) || inc > 2.0 + 1e-12) {
      throw std::invalid_argument("CumulativeLosses::after_step: increment " +
                                  format_double(inc) + " outside [0, 2]");
    }
    next[k] += inc;
  }
  return CumulativeLosses(std::move(next), step_count_ + 1);
}

BaselineConfig BaselineConfig::make(std::string_view name, double parameter) {
  BaselineAlgorithm algo;
  if (name == "wdaa") algo = BaselineAlgorithm::wdaa;
  else if (name == "wkaa") algo = BaselineAlgorithm::wkaa;
  else if (name == "hedge") algo = BaselineAlgorithm::hedge;
  else if (name == "saa_ha") algo = BaselineAlgorithm::saa_ha;
  else if (name == "follow_leader") algo = BaselineAlgorithm::follow_leader;
  else if (name == "simple_average") algo = BaselineAlgorithm::simple_average;
  else if (name == "bma") algo = BaselineAlgorithm::bma;
  else throw std::invalid_argument("BaselineConfig: unknown algorithm '" + std::string(name) + "'");

  switch (algo) {
    case BaselineAlgorithm::wdaa:
    case BaselineAlgorithm::wkaa:
      if (!(parameter > 0.0)) {
        throw std::invalid_argument("BaselineConfig: c must be positive");
      }
      break;
    case BaselineAlgorithm::hedge:
      if (!(parameter >= 0.0) || parameter > 1.0) {
        throw std::invalid_argument("BaselineConfig: hedge beta must lie in [0, 1]");
      }
      break;
    case BaselineAlgorithm::saa_ha:
      if (!(parameter > 0.0) || parameter >= 1.0) {
        throw std::invalid_argument("BaselineConfig: saa_ha beta must lie in (0, 1)");
      }
      break;
    default:
      break;
  }
  return BaselineConfig{algo, parameter};
}

std::string_view to_string(BaselineAlgorithm a) {
  switch (a) {
    case BaselineAlgorithm::wdaa: return "wdaa";
    case BaselineAlgorithm::wkaa: return "wkaa";
    case BaselineAlgorithm::hedge: return "hedge";
    case BaselineAlgorithm::saa_ha: return "saa_ha";
    case BaselineAlgorithm::follow_leader: return "follow_leader";
    case BaselineAlgorithm::simple_average: return "simple_average";
    case BaselineAlgorithm::bma: return "bma";
  }
  return "?";
}

ProbVector wdaa_predict(const CumulativeLosses& L, const std::vector<ProbVector>& expert_preds,
                        double c) {
  check_pool(L, expert_preds, "wdaa_predict");
  if (!(c > 0.0)) throw std::invalid_argument("wdaa_predict: c must be positive");
  std::vector<double> lw(L.expert_count());
  for (std::size_t k = 0; k < lw.size(); ++k) lw[k] = -L.losses()[k] / c;
  return weighted_average(softmax_from_logs(lw), expert_preds);
}

double wdaa_optimal_c(std::size_t outcome_count) {
  if (outcome_count < 2) {
    throw std::invalid_argument("wdaa_optimal_c: need at least 2 outcomes");
  }
  return 8.0 * (1.0 - 1.0 / double(outcome_count));
}

ProbVector wkaa_predict(const CumulativeLosses& L, const std::vector<ProbVector>& expert_preds,
                        double c) {
  check_pool(L, expert_preds, "wkaa_predict");
  if (!(c > 0.0)) throw std::invalid_argument("wkaa_predict: c must be positive");
  const double scale = c / std::sqrt(double(L.step_count() + 1));
  std::vector<double> lw(L.expert_count());
  for (std::size_t k = 0; k < lw.size(); ++k) lw[k] = -scale * L.losses()[k];
  return weighted_average(softmax_from_logs(lw), expert_preds);
}

std::vector<double> hedge_distribution(const CumulativeLosses& L, double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("hedge_distribution: beta must lie in (0, 1)");
  }
  const double log_beta = std::log(beta);
  std::vector<double> lw(L.expert_count());
  for (std::size_t k = 0; k < lw.size(); ++k) lw[k] = L.losses()[k] * log_beta;
  return softmax_from_logs(lw);
}

std::vector<double> saa_ha_distribution(std::span<const double> p, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("saa_ha_distribution: beta must be positive");
  if (beta >= 1.0) {
    throw std::invalid_argument(
        "saa_ha_distribution: beta must be below 1 (the transform degenerates at beta = 1)");
  }
  if (p.empty()) throw std::invalid_argument("saa_ha_distribution: empty distribution");
  double sum = 0.0;
  for (double pk : p) {
    if (!(pk >= 0.0)) throw std::invalid_argument("saa_ha_distribution: negative component");
    sum += pk;
  }
  if (std::abs(sum - 1.0) > kProbSumTolerance) {
    throw std::invalid_argument("saa_ha_distribution: input does not sum to 1");
  }
  std::vector<double> q(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    q[k] = -std::log1p((beta - 1.0) * p[k]);
  }
  const double total = neumaier_sum(q);
  for (double& qk : q) qk /= total;
  return q;
}

ProbVector follow_leader(const CumulativeLosses& L, const std::vector<ProbVector>& expert_preds) {
  check_pool(L, expert_preds, "follow_leader");
  const double best = *std::min_element(L.losses().begin(), L.losses().end());
  std::vector<double> w(L.expert_count(), 0.0);
  std::size_t leaders = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (L.losses()[k] <= best + kLeaderTieTolerance) {
      w[k] = 1.0;
      ++leaders;
    }
  }
  for (double& wk : w) wk /= double(leaders);
  return weighted_average(w, expert_preds);
}

ProbVector simple_average(const std::vector<ProbVector>& expert_preds) {
  if (expert_preds.empty()) {
    throw std::invalid_argument("simple_average: empty expert pool");
  }
  std::vector<double> w(expert_preds.size(), 1.0 / double(expert_preds.size()));
  return weighted_average(w, expert_preds);
}

ProbVector bma_predict(std::span<const double> log_weights,
                       const std::vector<ProbVector>& expert_preds) {
  if (expert_preds.empty() || expert_preds.size() != log_weights.size()) {
    throw std::invalid_argument("bma_predict: expert count mismatch");
  }
  bool any_alive = false;
  for (double lw : log_weights) any_alive = any_alive || std::isfinite(lw);
  if (!any_alive) {
    throw std::runtime_error(
        "bma_predict: pool collapse (every expert assigned probability 0 to "
        "some observed outcome)");
  }
  return weighted_average(softmax_from_logs(log_weights), expert_preds);
}

std::vector<double> bma_update(std::span<const double> log_weights, const Observation& omega,
                               const std::vector<ProbVector>& expert_preds) {
  if (expert_preds.size() != log_weights.size()) {
    throw std::invalid_argument("bma_update: expert count mismatch");
  }
  std::vector<double> next(log_weights.begin(), log_weights.end());
  for (std::size_t k = 0; k < next.size(); ++k) {
    if (expert_preds[k].size() != omega.space_size()) {
      throw std::invalid_argument("bma_update: prediction dimension mismatch");
    }
    next[k] += std::log(expert_preds[k][omega.zero_based()]);
  }
  return next;
}

}  // namespace brieragg
