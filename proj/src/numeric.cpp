#include "brieragg/numeric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace brieragg {

double neumaier_sum(std::span<const double> xs) {
  double sum = 0.0;
  double comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double log_sum_exp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (std::isinf(m) && m < 0) return m;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

std::vector<double> softmax_from_logs(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (std::isinf(m) && m < 0) {
    throw std::runtime_error("softmax_from_logs: all log weights are -inf");
  }
  std::vector<double> w(xs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    w[i] = std::exp(xs[i] - m);
    total += w[i];
  }
  for (double& wi : w) wi /= total;
  return w;
}

std::vector<double> sample_simplex(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> u(n);
  while (true) {
    double total = 0.0;
    bool ok = true;
    for (double& ui : u) {
      ui = exp1(rng);
      ok = ok && ui > 0.0;
      total += ui;
    }
    if (!ok) continue;  // exp1 can return exactly 0; redraw
    for (double& ui : u) ui /= total;
    return u;
  }
}

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

}  // namespace brieragg
