#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "ewp/combinatorics.hpp"
#include "ewp/errors.hpp"
#include "ewp/rng.hpp"
#include "oracles.hpp"

using namespace ewp;

TEST_CASE("rising factorial basics") {
  CHECK(rising_factorial(2.0, 3, 1.0) == doctest::Approx(24.0).epsilon(1e-15));
  CHECK(rising_factorial(0.7, 0, 1.0) == 1.0);  // empty product proviso
  CHECK(rising_factorial(0.5, 2, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(rising_factorial(GenFactorialSpec{3.0, 2, 0.5}) == doctest::Approx(3.0 * 3.5));
  CHECK_THROWS_AS(rising_factorial(1.0, -1, 1.0), ValidationError);
}

TEST_CASE("falling factorial basics") {
  CHECK(falling_factorial(5.0, 2) == doctest::Approx(20.0));
  CHECK(falling_factorial(-3.7, 0) == 1.0);
  CHECK(falling_factorial(3.0, 4) == 0.0);  // hits the zero factor
}

TEST_CASE("rising factorial concatenation property") {
  // (a)_{j^b} (a + j b)_{m^b} = (a)_{(j+m)^b}
  RngStream rng(20260811, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = -3.0 + 6.0 * rng.uniform();
    const double b = 0.1 + 2.0 * rng.uniform();
    const int j = int(rng.uniform_below(16));
    const int m = int(rng.uniform_below(std::uint64_t(31 - j)));  // j + m <= 30
    const double lhs = rising_factorial(a, j, b) * rising_factorial(a + j * b, m, b);
    const double rhs = rising_factorial(a, j + m, b);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("log rising factorial carries sign and exact zero") {
  const SignedLog v = log_rising_factorial(-2.5, 3, 1.0);  // (-2.5)(-1.5)(-0.5)
  CHECK(v.sign == -1);
  CHECK(v.value() == doctest::Approx(-1.875).epsilon(1e-14));
  CHECK(log_rising_factorial(3.0, 4, -1.0).is_zero());
  const SignedLog w = log_rising_factorial(0.3, 5, 0.7);
  CHECK(w.value() == doctest::Approx(rising_factorial(0.3, 5, 0.7)).epsilon(1e-13));
}

TEST_CASE("stirling table matches an exact recomputation") {
  using boost::multiprecision::cpp_int;
  const auto& table = stirling_table();
  REQUIRE(table.max_n() == 64);
  std::vector<std::vector<cpp_int>> rows(65);
  rows[0] = {1};
  for (int n = 1; n <= 64; ++n) {
    rows[n].assign(n + 1, 0);
    for (int k = 1; k <= n; ++k) {
      cpp_int v = rows[n - 1][k - 1];
      if (k <= n - 1) v += k * rows[n - 1][k];
      rows[n][k] = v;
    }
  }
  for (int n = 0; n <= 64; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(table.exact_string(n, k) == rows[n][k].str());
}

TEST_CASE("stirling numbers against set-partition counting") {
  // S(n,k) = number of histograms with k blocks weighted by partition_count.
  for (int n = 1; n <= 9; ++n) {
    std::vector<double> by_k(n + 1, 0.0);
    for (const auto& [hist, pr] : ewp_tests::multiplicity_law_oracle(0.0, 1.0, n)) {
      (void)pr;
      std::int64_t k = 0;
      for (auto c : hist) k += c;
      by_k[k] += ewp_tests::partition_count(hist);
    }
    for (int k = 1; k <= n; ++k)
      CHECK(stirling2(n, k) == doctest::Approx(by_k[k]).epsilon(1e-12));
  }
  CHECK(stirling2(3, 2) == 3.0);
  CHECK(stirling2(4, 2) == 7.0);
  CHECK(stirling2(0, 0) == 1.0);
}

TEST_CASE("stirling row sums are Bell numbers") {
  const auto bell = ewp_tests::bell_numbers(20);
  for (int n = 0; n <= 20; ++n) {
    double row = 0.0;
    for (int k = 0; k <= n; ++k) row += stirling2(n, k);
    CHECK(row == doctest::Approx(bell[n]).epsilon(1e-12));
  }
}

TEST_CASE("stirling domain errors") {
  CHECK_THROWS_AS(stirling2(65, 1), ValidationError);
  CHECK_THROWS_AS(stirling2(3, 4), ValidationError);
  CHECK_THROWS_AS(stirling2(-1, 0), ValidationError);
}

TEST_CASE("non-central stirling reduces to central at a = 0") {
  for (int n = 0; n <= 10; ++n)
    for (int k = 0; k <= n; ++k)
      CHECK(noncentral_stirling2(n, k, 0.0) == doctest::Approx(stirling2(n, k)));
}

TEST_CASE("non-central stirling recurrence examples") {
  CHECK(noncentral_stirling2(1, 1, 2.0) == 1.0);
  CHECK(noncentral_stirling2(2, 1, 2.0) == 5.0);  // S(1,0;a) + (1+a) S(1,1;a)
  CHECK_THROWS_AS(noncentral_stirling2(2, 3, 1.0), ValidationError);
}

TEST_CASE("non-central stirling polynomial identity") {
  // sum_k S(n,k;a) (x)_{k v 1} = (x + a)^n
  for (double a : {0.5, 1.0, 2.5})
    for (int n = 0; n <= 12; ++n)
      for (double x : {0.0, 1.0, 2.0, 3.0}) {
        double lhs = 0.0;
        for (int k = 0; k <= n; ++k)
          lhs += noncentral_stirling2(n, k, a) * falling_factorial(x, k);
        CHECK(lhs == doctest::Approx(std::pow(x + a, n)).epsilon(1e-10));
      }
}

TEST_CASE("non-central stirling central-form expansion") {
  // (a)_{i^1} S(r,i;a) = sum_{t=i}^r (-1)^{r-t} C(t,i) S(r,t) (a)_{t^1}
  for (double a : {0.5, 2.0, 7.0 / 3.0})
    for (int r = 0; r <= 8; ++r)
      for (int i = 0; i <= r; ++i) {
        const double lhs = rising_factorial(a, i) * noncentral_stirling2(r, i, a);
        double rhs = 0.0;
        for (int t = i; t <= r; ++t) {
          const double binom = std::exp(std::lgamma(t + 1.0) - std::lgamma(i + 1.0) -
                                        std::lgamma(t - i + 1.0));
          rhs += ((r - t) % 2 == 0 ? 1.0 : -1.0) * binom * stirling2(r, t) *
                 rising_factorial(a, t);
        }
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
      }
}

TEST_CASE("log_gen_binom basics") {
  CHECK(log_gen_binom(5.0, 2).value() == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(log_gen_binom(2.5, 2).value() == doctest::Approx(1.875).epsilon(1e-13));
  CHECK(log_gen_binom(7.3, 0).log_abs == 0.0);
  CHECK(log_gen_binom(7.3, 0).sign == 1);
}

TEST_CASE("log_gen_binom sign and zero reporting") {
  // C(0.5, 2) = 0.5 * (-0.5) / 2 = -0.125
  const SignedLog v = log_gen_binom(0.5, 2);
  CHECK(v.sign == -1);
  CHECK(std::exp(v.log_abs) == doctest::Approx(0.125).epsilon(1e-13));
  CHECK(log_gen_binom(3.0, 4).is_zero());  // integral x < k
}

TEST_CASE("log_gen_binom matches the direct product") {
  for (int k : {1, 2, 5, 10, 25, 50})
    for (double dx : {0.0, 0.3, 1.0, 7.7, 33.3, 100.0}) {
      const double x = k + dx;
      double direct = 1.0;
      for (int i = 0; i < k; ++i) direct *= (x - i) / double(i + 1);
      CHECK(std::exp(log_gen_binom(x, k).log_abs) ==
            doctest::Approx(direct).epsilon(1e-12));
    }
}
