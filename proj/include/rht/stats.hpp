#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rht {

/// Raised when an argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Natural-log likelihood of a discrete outcome. Adding two values multiplies
/// the underlying probabilities; -inf encodes probability zero.
struct LogLikelihood {
  double value = 0.0;

  static LogLikelihood zero_probability() {
    return {-std::numeric_limits<double>::infinity()};
  }
  bool is_impossible() const { return value == -std::numeric_limits<double>::infinity(); }

  LogLikelihood& operator+=(LogLikelihood other) {
    value += other.value;
    return *this;
  }
  friend LogLikelihood operator+(LogLikelihood lhs, LogLikelihood rhs) { return lhs += rhs; }
  friend auto operator<=>(LogLikelihood, LogLikelihood) = default;
};

/// ln(p^k) with 0^0 = 1, so a zero exponent contributes exactly 0.
double log_power(double p, std::int64_t k);

/// C(n,x) p^x (1-p)^(n-x), evaluated in log space.
double binom_pmf(std::int64_t x, double p, std::int64_t n);

/// Pr(Binomial(n,p) <= x) by direct summation. 0 for x < 0, 1 for x >= n.
double binom_cdf(std::int64_t x, double p, std::int64_t n);

/// Pr(Binomial(n,p) >= x). 1 for x <= 0, 0 for x > n.
double binom_sf(std::int64_t x, double p, std::int64_t n);

}  // namespace rht
