#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace brieragg {

// Finite outcome space with outcomes labeled 1..n.
class OutcomeSpace {
 public:
  explicit OutcomeSpace(std::size_t n);

  std::size_t size() const { return n_; }

  friend bool operator==(const OutcomeSpace&, const OutcomeSpace&) = default;

 private:
  std::size_t n_;
};

// One observed outcome of an OutcomeSpace, labeled 1..n.
class Observation {
 public:
  Observation(std::size_t one_based_label, const OutcomeSpace& space);

  std::size_t one_based() const { return label_; }
  std::size_t zero_based() const { return label_ - 1; }
  std::size_t space_size() const { return n_; }

 private:
  std::size_t label_;
  std::size_t n_;
};

// Maximum absolute deviation from 1 tolerated in a probability vector's sum.
inline constexpr double kProbSumTolerance = 1e-9;

// A point on the probability simplex over n outcomes. Construction requires
// non-negative components summing to 1 within kProbSumTolerance, then stores
// the renormalized vector and remembers the pre-normalization deviation.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> p);

  static ProbVector uniform(const OutcomeSpace& space);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const { return p_; }

  // Sum of the raw components minus 1, before renormalization.
  double normalization_gap() const { return gap_; }

 private:
  std::vector<double> p_;
  double gap_ = 0.0;
};

// The probability measure concentrated at omega.
ProbVector vertex(const Observation& omega);

// Squared Euclidean distance between gamma and the vertex at omega; the
// per-round loss of the Brier game. Always in [0, 2].
double brier_loss(const Observation& omega, const ProbVector& gamma);

namespace detail {

// brier_loss over raw storage, for hot loops. outcome is a zero-based index.
double brier_loss(std::size_t outcome, std::span<const double> gamma);

}  // namespace detail

}  // namespace brieragg
