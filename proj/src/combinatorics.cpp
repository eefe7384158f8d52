#include "ewp/combinatorics.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "ewp/errors.hpp"

namespace ewp {

using boost::multiprecision::cpp_int;

double rising_factorial(double base, int steps, double increment) {
  if (steps < 0) throw ValidationError("rising_factorial: steps must be >= 0");
  double prod = 1.0;
  for (int i = 0; i < steps; ++i) prod *= base + i * increment;
  return prod;
}

double rising_factorial(const GenFactorialSpec& spec) {
  return rising_factorial(spec.base, spec.steps, spec.increment);
}

SignedLog log_rising_factorial(double base, int steps, double increment) {
  if (steps < 0) throw ValidationError("log_rising_factorial: steps must be >= 0");
  SignedLog out = SignedLog::one();
  for (int i = 0; i < steps; ++i) {
    const double f = base + i * increment;
    if (f == 0.0) return SignedLog::zero();
    out.sign *= f > 0 ? 1 : -1;
    out.log_abs += std::log(std::abs(f));
  }
  return out;
}

double falling_factorial(double c, int j) {
  return rising_factorial(c, j, -1.0);
}

struct StirlingTable::Impl {
  // Row-major triangle: rows_[n][k].
  std::vector<std::vector<cpp_int>> rows;
};

StirlingTable::StirlingTable(int max_n) : max_n_(max_n), impl_(std::make_unique<Impl>()) {
  if (max_n < 0) throw ValidationError("StirlingTable: max_n must be >= 0");
  impl_->rows.resize(max_n + 1);
  impl_->rows[0] = {cpp_int(1)};
  for (int n = 1; n <= max_n; ++n) {
    auto& row = impl_->rows[n];
    const auto& prev = impl_->rows[n - 1];
    row.assign(n + 1, cpp_int(0));
    for (int k = 1; k <= n; ++k) {
      cpp_int v = (k - 1 <= n - 1 ? prev[k - 1] : cpp_int(0));
      if (k <= n - 1) v += k * prev[k];
      row[k] = v;
    }
  }
}

StirlingTable::~StirlingTable() = default;
StirlingTable::StirlingTable(StirlingTable&&) noexcept = default;
StirlingTable& StirlingTable::operator=(StirlingTable&&) noexcept = default;

namespace {
void check_stirling_range(int n, int k, int max_n) {
  if (n < 0 || k < 0 || k > n || n > max_n)
    throw ValidationError("stirling2: need 0 <= k <= n <= " + std::to_string(max_n));
}
}  // namespace

double StirlingTable::value(int n, int k) const {
  check_stirling_range(n, k, max_n_);
  return impl_->rows[n][k].convert_to<double>();
}

std::string StirlingTable::exact_string(int n, int k) const {
  check_stirling_range(n, k, max_n_);
  return impl_->rows[n][k].str();
}

const StirlingTable& stirling_table() {
  static const StirlingTable table(64);
  return table;
}

double stirling2(int n, int k) { return stirling_table().value(n, k); }

double noncentral_stirling2(int n, int k, double a) {
  if (n < 0 || k < 0 || k > n)
    throw ValidationError("noncentral_stirling2: need 0 <= k <= n");
  // Two rolling rows of the recurrence; k stays small in every use here.
  std::vector<double> prev(n + 1, 0.0), cur(n + 1, 0.0);
  prev[0] = 1.0;
  for (int nn = 1; nn <= n; ++nn) {
    cur[0] = prev[0] * a;  // S(nn,0;a) = a^nn
    for (int kk = 1; kk <= nn; ++kk)
      cur[kk] = prev[kk - 1] + (kk + a) * prev[kk];
    std::swap(prev, cur);
  }
  return prev[k];
}

SignedLog log_gen_binom(double x, int k) {
  if (k < 0) throw ValidationError("log_gen_binom: k must be >= 0");
  if (k == 0) return SignedLog::one();
  // lgamma route needs x+1 > 0 and x-k+1 > 0; use it only well clear of the
  // poles, where it is also free of cancellation.
  if (x > k - 1.0 + 1e-9) {
    return {1, std::lgamma(x + 1.0) - std::lgamma(x - k + 1.0) - std::lgamma(double(k) + 1.0)};
  }
  // Direct product x(x-1)...(x-k+1)/k!; reports the exact sign.
  SignedLog num = log_rising_factorial(x, k, -1.0);
  if (num.is_zero()) return SignedLog::zero();
  return {num.sign, num.log_abs - std::lgamma(double(k) + 1.0)};
}

}  // namespace ewp
