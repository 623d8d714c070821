#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace brieragg {

// A point strictly inside the probability simplex.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> u);

  std::size_t size() const { return u_.size(); }
  double operator[](std::size_t i) const { return u_[i]; }
  const std::vector<double>& values() const { return u_; }

 private:
  std::vector<double> u_;
};

// sum_i u_i prod_{j != i} (1 - 2 eta u_j). Shares the sign of the
// Gauss-Kronecker curvature of the eta-exponential superprediction surface
// at u (the proportionality coefficient is positive).
double curvature_value(const SimplexPoint& u, double eta);

// Componentwise exp(-eta f).
std::vector<double> exp_map(std::span<const double> f, double eta);

struct CurvatureSweepResult {
  double min_value;
  std::vector<double> argmin;
};

// Minimum of curvature_value over `samples` Dirichlet(1,...,1) draws plus the
// deterministic stress points near (1/2, 1/2, 0, ...), where the sign first
// flips as eta crosses 1.
CurvatureSweepResult curvature_sign_sweep(std::size_t n, double eta, std::size_t samples,
                                          std::uint64_t seed);

struct MixabilityWitness {
  std::vector<double> gamma1;
  std::vector<double> gamma2;
  double alpha;
  std::size_t outcome_one_based;
  double violation;  // in exp(-eta * loss) units
};

struct MixabilityReport {
  double eta;
  std::size_t outcome_count;
  std::size_t grid_resolution;
  bool consistent;  // no violation found
  std::optional<MixabilityWitness> witness;
};

// Grid search for a mixability counterexample: for every grid pair
// (gamma1, gamma2) and mixing weight alpha, substitute into the mixed losses
// and test whether the candidate's exponentiated loss dominates the mixture.
// The substitution realizes the maximal uniform shift, so a failure here is
// a genuine counterexample, not a slack one. Supports n = 2 or 3.
MixabilityReport mixability_search(double eta, std::size_t n, std::size_t grid_resolution);

inline constexpr double kMixabilityTolerance = 1e-9;

namespace detail {

double curvature_value(std::span<const double> u, double eta);

}  // namespace detail

}  // namespace brieragg
