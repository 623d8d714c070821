#include "brieragg/mixability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "brieragg/numeric.hpp"

namespace brieragg {

SimplexPoint::SimplexPoint(std::vector<double> u) : u_(std::move(u)) {
  if (u_.size() < 2) {
    throw std::invalid_argument("SimplexPoint: need at least 2 coordinates");
  }
  for (double ui : u_) {
    if (!(ui > 0.0)) {
      throw std::invalid_argument("SimplexPoint: coordinates must be strictly positive");
    }
  }
  const double sum = neumaier_sum(u_);
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("SimplexPoint: coordinates sum to " + format_double(sum));
  }
}

double curvature_value(const SimplexPoint& u, double eta) {
  return detail::curvature_value(u.values(), eta);
}

std::vector<double> exp_map(std::span<const double> f, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("exp_map: eta must be positive");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::exp(-eta * f[i]);
  return out;
}

namespace detail {

double curvature_value(std::span<const double> u, double eta) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double prod = u[i];
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (j != i) prod *= 1.0 - 2.0 * eta * u[j];
    }
    total += prod;
  }
  return total;
}

}  // namespace detail

namespace {

// (1/2 - eps, 1/2 - eps, 2 eps / (n-2), ...): where the curvature sign first
// flips once eta exceeds 1. For n = 2 the flip point is (1/2, 1/2) itself.
std::vector<double> stress_point(std::size_t n) {
  constexpr double eps = 1e-3;
  if (n == 2) return {0.5, 0.5};
  std::vector<double> u(n, 2.0 * eps / double(n - 2));
  u[0] = 0.5 - eps;
  u[1] = 0.5 - eps;
  return u;
}

}  // namespace

CurvatureSweepResult curvature_sign_sweep(std::size_t n, double eta, std::size_t samples,
                                          std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("curvature_sign_sweep: need n >= 2");
  if (samples < 1) throw std::invalid_argument("curvature_sign_sweep: need samples >= 1");
  if (!(eta > 0.0)) throw std::invalid_argument("curvature_sign_sweep: eta must be positive");

  CurvatureSweepResult result;
  result.argmin = stress_point(n);
  result.min_value = detail::curvature_value(result.argmin, eta);

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> u = sample_simplex(n, rng);
    const double v = detail::curvature_value(u, eta);
    if (v < result.min_value) {
      result.min_value = v;
      result.argmin = std::move(u);
    }
  }
  return result;
}

namespace {

// Water-filling substitution for n <= 3 without heap traffic.
inline void substitute_small(const double* g, double* gamma, int n) {
  double sorted[3];
  for (int i = 0; i < n; ++i) sorted[i] = g[i];
  for (int i = 1; i < n; ++i) {  // insertion sort
    const double v = sorted[i];
    int j = i - 1;
    while (j >= 0 && sorted[j] > v) {
      sorted[j + 1] = sorted[j];
      --j;
    }
    sorted[j + 1] = v;
  }
  double prefix = 0.0;
  double s = 0.0;
  for (int m = 1; m <= n; ++m) {
    prefix += sorted[m - 1];
    s = (2.0 + prefix) / double(m);
    if (m == n || s <= sorted[m]) break;
  }
  for (int i = 0; i < n; ++i) gamma[i] = std::max(s - g[i], 0.0) / 2.0;
}

struct GridPoint {
  double gamma[3];
  double expd[3];  // exp(-eta * loss(omega, gamma)) per outcome
};

std::vector<GridPoint> make_grid(std::size_t n, std::size_t res, double eta) {
  std::vector<GridPoint> pts;
  const double h = 1.0 / double(res);
  auto add = [&](double a, double b, double c) {
    GridPoint p;
    p.gamma[0] = a;
    p.gamma[1] = b;
    p.gamma[2] = c;
    double sumsq = a * a + b * b + (n == 3 ? c * c : 0.0);
    for (std::size_t w = 0; w < n; ++w) {
      const double loss = sumsq - 2.0 * p.gamma[w] + 1.0;
      p.expd[w] = std::exp(-eta * loss);
    }
    pts.push_back(p);
  };
  if (n == 2) {
    for (std::size_t i = 0; i <= res; ++i) add(double(i) * h, 1.0 - double(i) * h, 0.0);
  } else {
    for (std::size_t i = 0; i <= res; ++i) {
      for (std::size_t j = 0; i + j <= res; ++j) {
        add(double(i) * h, double(j) * h, 1.0 - double(i + j) * h);
      }
    }
  }
  return pts;
}

}  // namespace

MixabilityReport mixability_search(double eta, std::size_t n, std::size_t grid_resolution) {
  if (n != 2 && n != 3) {
    throw std::invalid_argument("mixability_search: only n = 2 or 3 supported (grid size is "
                                "exponential in n)");
  }
  if (grid_resolution < 10) {
    throw std::invalid_argument("mixability_search: grid resolution must be at least 10");
  }
  if (!(eta > 0.0)) throw std::invalid_argument("mixability_search: eta must be positive");

  const std::vector<GridPoint> pts = make_grid(n, grid_resolution, eta);

  std::vector<double> alphas;
  alphas.push_back(0.5);
  for (std::size_t i = 0; i <= grid_resolution; ++i) {
    const double a = double(i) / double(grid_resolution);
    if (a != 0.5) alphas.push_back(a);
  }

  MixabilityReport report;
  report.eta = eta;
  report.outcome_count = n;
  report.grid_resolution = grid_resolution;
  report.consistent = true;

  const double inv_eta = 1.0 / eta;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a; b < pts.size(); ++b) {
      for (double alpha : alphas) {
        double mix[3], g[3], delta[3];
        for (std::size_t w = 0; w < n; ++w) {
          mix[w] = alpha * pts[a].expd[w] + (1.0 - alpha) * pts[b].expd[w];
          g[w] = -std::log(mix[w]) * inv_eta;
        }
        substitute_small(g, delta, int(n));
        double sumsq = 0.0;
        for (std::size_t w = 0; w < n; ++w) sumsq += delta[w] * delta[w];
        for (std::size_t w = 0; w < n; ++w) {
          const double cand = std::exp(-eta * (sumsq - 2.0 * delta[w] + 1.0));
          const double violation = mix[w] - cand;
          if (violation > kMixabilityTolerance) {
            report.consistent = false;
            MixabilityWitness wit;
            wit.gamma1.assign(pts[a].gamma, pts[a].gamma + n);
            wit.gamma2.assign(pts[b].gamma, pts[b].gamma + n);
            wit.alpha = alpha;
            wit.outcome_one_based = w + 1;
            wit.violation = violation;
            report.witness = std::move(wit);
            return report;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace brieragg
