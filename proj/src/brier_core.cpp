#include "brieragg/brier_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "brieragg/numeric.hpp"

namespace brieragg {

OutcomeSpace::OutcomeSpace(std::size_t n) : n_(n) {
  if (n < 2) {
    throw std::invalid_argument("OutcomeSpace: need at least 2 outcomes, got " +
                                std::to_string(n));
  }
}

Observation::Observation(std::size_t one_based_label, const OutcomeSpace& space)
    : label_(one_based_label), n_(space.size()) {
  if (one_based_label < 1 || one_based_label > n_) {
    throw std::invalid_argument("Observation: label " + std::to_string(one_based_label) +
                                " outside 1.." + std::to_string(n_));
  }
}

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) {
    throw std::invalid_argument("ProbVector: empty component list");
  }
  for (double pi : p_) {
    if (!(pi >= 0.0)) {  // also rejects NaN
      throw std::invalid_argument("ProbVector: negative or NaN component");
    }
  }
  const double sum = neumaier_sum(p_);
  gap_ = sum - 1.0;
  if (std::abs(gap_) > kProbSumTolerance) {
    throw std::invalid_argument("ProbVector: components sum to " +
                                format_double(sum) + ", expected 1");
  }
  if (sum != 1.0) {
    for (double& pi : p_) pi /= sum;
  }
}

ProbVector ProbVector::uniform(const OutcomeSpace& space) {
  return ProbVector(std::vector<double>(space.size(), 1.0 / double(space.size())));
}

ProbVector vertex(const Observation& omega) {
  std::vector<double> p(omega.space_size(), 0.0);
  p[omega.zero_based()] = 1.0;
  return ProbVector(std::move(p));
}

double brier_loss(const Observation& omega, const ProbVector& gamma) {
  if (omega.space_size() != gamma.size()) {
    throw std::invalid_argument("brier_loss: observation over " +
                                std::to_string(omega.space_size()) +
                                " outcomes, prediction over " +
                                std::to_string(gamma.size()));
  }
  return detail::brier_loss(omega.zero_based(), gamma.values());
}

namespace detail {

double brier_loss(std::size_t outcome, std::span<const double> gamma) {
  double loss = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const double d = gamma[i] - (i == outcome ? 1.0 : 0.0);
    loss += d * d;
  }
  return loss;
}

}  // namespace detail

}  // namespace brieragg
