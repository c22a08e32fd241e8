#include "rht/stats.hpp"

#include <cmath>

namespace rht {

namespace {

void check_probability(double p, const char* op) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(op) + ": probability " + std::to_string(p) + " outside [0,1]");
  }
}

double log_choose(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

double log_power(double p, std::int64_t k) {
  if (k == 0) return 0.0;
  if (p == 0.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(k) * std::log(p);
}

double binom_pmf(std::int64_t x, double p, std::int64_t n) {
  check_probability(p, "binom_pmf");
  if (n < 0 || x < 0 || x > n) {
    throw DomainError("binom_pmf: need 0 <= x <= n, got x=" + std::to_string(x) +
                      " n=" + std::to_string(n));
  }
  // Degenerate endpoints are exact; lgamma would only add rounding noise.
  if (p == 0.0) return x == 0 ? 1.0 : 0.0;
  if (p == 1.0) return x == n ? 1.0 : 0.0;
  if (n == 0) return 1.0;
  const double log_value = log_choose(n, x) + log_power(p, x) + log_power(1.0 - p, n - x);
  return std::exp(log_value);
}

double binom_cdf(std::int64_t x, double p, std::int64_t n) {
  check_probability(p, "binom_cdf");
  if (n < 0) throw DomainError("binom_cdf: negative trial count " + std::to_string(n));
  if (x < 0) return 0.0;
  if (x >= n) return 1.0;
  double sum = 0.0;
  for (std::int64_t i = 0; i <= x; ++i) sum += binom_pmf(i, p, n);
  return sum > 1.0 ? 1.0 : sum;
}

double binom_sf(std::int64_t x, double p, std::int64_t n) {
  check_probability(p, "binom_sf");
  if (n < 0) throw DomainError("binom_sf: negative trial count " + std::to_string(n));
  if (x <= 0) return 1.0;
  if (x > n) return 0.0;
  // Sum the upper tail directly instead of 1 - cdf to keep small tails accurate.
  double sum = 0.0;
  for (std::int64_t i = x; i <= n; ++i) sum += binom_pmf(i, p, n);
  return sum > 1.0 ? 1.0 : sum;
}

}  // namespace rht
