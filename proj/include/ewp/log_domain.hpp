#ifndef EWP_LOG_DOMAIN_HPP
#define EWP_LOG_DOMAIN_HPP

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace ewp {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// A real number stored as (sign, log|x|). sign == 0 encodes an exact zero,
// which keeps zero factors distinguishable from underflow.
struct SignedLog {
  int sign = 0;
  double log_abs = neg_inf;

  static SignedLog zero() { return {0, neg_inf}; }
  static SignedLog one() { return {1, 0.0}; }
  static SignedLog from_value(double x) {
    if (x == 0.0) return zero();
    return {x > 0 ? 1 : -1, std::log(std::abs(x))};
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  bool is_zero() const { return sign == 0; }

  SignedLog operator*(const SignedLog& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return {sign * o.sign, log_abs + o.log_abs};
  }
};

// log(e^a + e^b), tolerant of -inf on either side.
inline double log_add(double a, double b) {
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

inline double log_sum_exp(std::span<const double> xs) {
  double hi = neg_inf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == neg_inf) return neg_inf;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - hi);
  return hi + std::log(sum);
}

// Streaming log-sum-exp over nonnegative terms given in log domain.
// Rescales on the fly so arbitrarily long, arbitrarily large series stay finite.
class LogSumAccumulator {
 public:
  void add(double log_term) {
    if (log_term == neg_inf) return;
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }
  double log_total() const {
    if (sum_ == 0.0) return neg_inf;
    return max_ + std::log(sum_);
  }
  bool empty() const { return sum_ == 0.0; }

 private:
  double max_ = neg_inf;
  double sum_ = 0.0;
};

}  // namespace ewp

#endif
