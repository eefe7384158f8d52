#ifndef EWP_COMBINATORICS_HPP
#define EWP_COMBINATORICS_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "ewp/log_domain.hpp"

namespace ewp {

// Generalized rising factorial (base)_{steps ^ increment} =
// base * (base + increment) * ... * (base + (steps-1) * increment),
// with the empty product equal to 1.
struct GenFactorialSpec {
  double base = 0.0;
  int steps = 0;
  double increment = 1.0;
};

double rising_factorial(double base, int steps, double increment = 1.0);
double rising_factorial(const GenFactorialSpec& spec);

// Log-domain variant; carries the product's sign, exact zeros included.
SignedLog log_rising_factorial(double base, int steps, double increment = 1.0);

// (c)_{j v 1} = c * (c-1) * ... * (c-j+1) = (c)_{j ^ -1}.
double falling_factorial(double c, int j);

// Exact table of Stirling numbers of the second kind, S(n,k) for
// 0 <= k <= n <= max_n, arbitrary-precision integers. Read-only and
// safe for concurrent use after construction.
class StirlingTable {
 public:
  explicit StirlingTable(int max_n = 64);
  ~StirlingTable();
  StirlingTable(StirlingTable&&) noexcept;
  StirlingTable& operator=(StirlingTable&&) noexcept;

  int max_n() const { return max_n_; }
  // S(n,k) as double; throws ValidationError outside 0 <= k <= n <= max_n.
  double value(int n, int k) const;
  // Decimal string of the exact integer (for tests and emission).
  std::string exact_string(int n, int k) const;

 private:
  struct Impl;
  int max_n_;
  std::unique_ptr<Impl> impl_;
};

// Shared default table (max_n = 64), built on first use.
const StirlingTable& stirling_table();

// S(n,k) from the shared table.
double stirling2(int n, int k);

// Non-central Stirling number of the second kind under the convention
//   S(n,k;a) = S(n-1,k-1;a) + (k+a) * S(n-1,k;a),  S(0,0;a) = 1,  S(n,0;a) = a^n,
// which satisfies sum_k S(n,k;a) (x)_{k v 1} = (x+a)^n.
double noncentral_stirling2(int n, int k, double a);

// log of C(x, k) = Gamma(x+1) / (Gamma(x-k+1) k!) for real x, integer k >= 0.
// Routes through log-gamma when all gamma arguments are safely positive,
// otherwise through the direct product so the sign of the value is exact.
SignedLog log_gen_binom(double x, int k);

}  // namespace ewp

#endif
