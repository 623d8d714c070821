#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace brieragg {

// Neumaier compensated summation; accurate to ~1 ulp of the exact sum.
double neumaier_sum(std::span<const double> xs);

// log(sum_i exp(x_i)) with max subtraction. -inf entries contribute zero
// weight; the result is -inf only when every entry is -inf.
double log_sum_exp(std::span<const double> xs);

// Normalized weights exp(x_i - max_j x_j). Requires at least one finite
// entry; throws std::runtime_error otherwise.
std::vector<double> softmax_from_logs(std::span<const double> xs);

// Uniform draw from the interior of the n-simplex (Dirichlet(1,...,1)).
std::vector<double> sample_simplex(std::size_t n, std::mt19937_64& rng);

// Shortest decimal form of x that round-trips through binary64.
std::string format_double(double x);

}  // namespace brieragg
