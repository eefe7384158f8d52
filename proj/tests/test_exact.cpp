#include <doctest.h>

#include <cmath>
#include <vector>

#include "ewp/combinatorics.hpp"
#include "ewp/errors.hpp"
#include "ewp/exact.hpp"
#include "ewp/log_domain.hpp"
#include "oracles.hpp"

using namespace ewp;

namespace {
const std::vector<std::pair<double, double>> kParamGrid{
    {0.25, 0.5}, {0.5, 1.0}, {0.75, 5.0}, {0.5, 0.0}, {0.3, -0.2}};

bool rel_close(double a, double b, double tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 1e-12) return std::abs(a - b) <= 1e-9;
  return std::abs(a - b) <= tol * scale;
}
}  // namespace

TEST_CASE("law_kn basics and the one-step example") {
  const auto law1 = law_kn(ModelParams{0.5, 0.5}, 1);
  CHECK(law1.prob(1) == doctest::Approx(1.0).epsilon(1e-14));
  const auto law2 = law_kn(ModelParams{0.5, 0.5}, 2);
  CHECK(law2.prob(1) == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(law2.prob(2) == doctest::Approx(2.0 / 3).epsilon(1e-14));
  CHECK_THROWS_AS(law_kn(ModelParams{0.5, 0.5}, 0), ValidationError);
  CHECK_THROWS_AS(law_kn(ModelParams{0.5, 0.5}, 20001), ResourceError);
}

TEST_CASE("law_kn normalizes across sizes and parameters") {
  for (const auto& [alpha, theta] : kParamGrid)
    for (std::int64_t n : {5, 50, 500, 2000}) {
      const auto law = law_kn(ModelParams{alpha, theta}, n);
      double total = neg_inf;
      for (std::int64_t k = 0; k <= n; ++k) total = log_add(total, law.log_prob[k]);
      CHECK(std::abs(total) <= 1e-10);
    }
}

TEST_CASE("law_kn equals the EPPF enumeration oracle") {
  for (const auto& [alpha, theta] : kParamGrid)
    for (int n = 1; n <= 9; ++n) {
      const auto oracle = ewp_tests::law_kn_oracle(alpha, theta, n);
      const auto law = law_kn(ModelParams{alpha, theta}, n);
      for (int k = 1; k <= n; ++k)
        CHECK(std::abs(law.prob(k) - oracle[k]) <= 1e-12);
    }
}

TEST_CASE("law_multiplicities matches the counting-formula oracle") {
  for (const auto& [alpha, theta] : kParamGrid)
    for (int n = 1; n <= 9; ++n) {
      const auto lib = law_multiplicities(ModelParams{alpha, theta}, n);
      const auto oracle = ewp_tests::multiplicity_law_oracle(alpha, theta, n);
      REQUIRE(lib.atoms.size() == oracle.size());
      double total = 0.0;
      for (const auto& atom : lib.atoms) {
        const auto it = oracle.find(atom.hist);
        REQUIRE(it != oracle.end());
        CHECK(std::abs(atom.prob - it->second) <= 1e-12);
        total += atom.prob;
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("law_multiplicities two-point example and state space") {
  const auto law2 = law_multiplicities(ModelParams{0.5, 0.5}, 2);
  REQUIRE(law2.atoms.size() == 2);  // {2} and {1,1}
  for (const auto& atom : law2.atoms) {
    if (atom.hist[1] == 1)
      CHECK(atom.prob == doctest::Approx(1.0 / 3).epsilon(1e-14));
    else
      CHECK(atom.prob == doctest::Approx(2.0 / 3).epsilon(1e-14));
  }
  CHECK(law_multiplicities(ModelParams{0.9, 3.0}, 3).atoms.size() == 3);
  CHECK_THROWS_AS(law_multiplicities(ModelParams{0.5, 0.5}, 15), ResourceError);
}

TEST_CASE("multiplicity marginal of K agrees with law_kn") {
  for (const auto& [alpha, theta] : kParamGrid)
    for (int n = 1; n <= 10; ++n) {
      const auto marg = law_multiplicities(ModelParams{alpha, theta}, n).marginal_k();
      const auto law = law_kn(ModelParams{alpha, theta}, n);
      for (int k = 1; k <= n; ++k)
        CHECK(std::abs(marg.prob(k) - law.prob(k)) <= 1e-12);
    }
}

TEST_CASE("mgf_kn_series analytic n=1 case") {
  for (double y : {0.1, 0.5, 0.9})
    CHECK(std::abs(mgf_kn_series_log(0.5, 1, y) - std::log(1.0 / (1.0 - y))) <= 1e-12);
}

TEST_CASE("mgf_kn_series matches the DP mixture at theta = 0") {
  for (double alpha : {0.25, 0.5, 0.75})
    for (std::int64_t n : {2, 5, 10, 30, 50})
      for (double y : {0.1, 0.3, 0.6}) {
        const double series = mgf_kn_series_log(alpha, n, y);
        const double tilt = -std::log1p(-y);
        const double mixture = law_kn(ModelParams{alpha, 0.0}, n).log_mgf(tilt);
        // relative error on the MGF value itself
        CHECK(std::abs(std::expm1(series - mixture)) <= 1e-8);
      }
}

TEST_CASE("mgf_kn_series near y = 0 collapses to 1") {
  const double v = mgf_kn_series_log(0.5, 10, 1e-12);
  CHECK(std::abs(std::expm1(v)) <= 1e-8);  // E[(1-y)^{-K}] -> 1
}

TEST_CASE("mgf_kn_series rejects bad domains") {
  CHECK_THROWS_AS(mgf_kn_series_log(0.0, 5, 0.3), ValidationError);
  CHECK_THROWS_AS(mgf_kn_series_log(0.5, 5, 0.0), ValidationError);
  CHECK_THROWS_AS(mgf_kn_series_log(0.5, 5, 1.0), ValidationError);
  CHECK_THROWS_AS(mgf_kn_series_log(0.5, 0, 0.3), ValidationError);
}

TEST_CASE("mgf_mln_series matches the enumeration mixture at theta = 0") {
  for (double alpha : {0.25, 0.5, 0.75})
    for (int n = 1; n <= 12; ++n)
      for (int l : {1, 2, 3}) {
        if (l > n) continue;
        for (double y : {0.1, 0.3, 0.6}) {
          const double series = mgf_mln_series_log(alpha, n, l, y);
          double mixture = 0.0;
          for (const auto& [hist, pr] :
               ewp_tests::multiplicity_law_oracle(alpha, 0.0, n))
            mixture += pr * std::pow(1.0 - y, -double(hist[l - 1]));
          CHECK(rel_close(std::exp(series), mixture, 1e-9));
        }
      }
}

TEST_CASE("mgf_mln_series does not extend to theta != 0") {
  // Domain-restriction witness: at theta = 1 the finite sum no longer
  // reproduces the mixture.
  double mixture = 0.0;
  for (const auto& [hist, pr] : ewp_tests::multiplicity_law_oracle(0.5, 1.0, 6))
    mixture += pr * std::pow(0.7, -double(hist[0]));
  const double series = std::exp(mgf_mln_series_log(0.5, 6, 1, 0.3));
  CHECK(std::abs(series - mixture) / mixture > 1e-3);
}

TEST_CASE("mgf_mln_series l = n has two terms") {
  const int n = 7;
  const double alpha = 0.5, y = 0.4;
  // i = 0 gives 1; i = 1 gives y_{n,n} * (n / (alpha n)) * C(alpha n, 0).
  const double rho = rising_factorial(1.0 - alpha, n - 1, 1.0);
  const double lf = std::exp(std::lgamma(double(n) + 1.0));
  const double ynl = alpha * rho / lf * y / (1.0 - y);
  const double expect = 1.0 + ynl * double(n) / alpha;
  CHECK(std::exp(mgf_mln_series_log(alpha, n, n, y)) ==
        doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("factorial_moment_kstar collapses and short-circuits") {
  CHECK(factorial_moment_kstar(ModelParams{0.5, 8.5}, 1, 1) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(factorial_moment_kstar(ModelParams{0.5, 8.5}, 1, 4) == 0.0);  // r > m
  CHECK(factorial_moment_kstar(ModelParams{0.5, 8.5}, 10, 0) == 1.0);
  CHECK_THROWS_AS(factorial_moment_kstar(ModelParams{0.5, 0.0}, 5, 2), ValidationError);
  CHECK_THROWS_AS(factorial_moment_kstar(ModelParams{0.5, 8.5}, 5, 31), ValidationError);
}

TEST_CASE("factorial_moment_kstar equals DP-law moments") {
  for (double alpha : {0.25, 0.5, 0.75})
    for (double theta : {0.5, 1.0, 5.0}) {
      const ModelParams star{alpha, theta + 8.0};
      for (std::int64_t m : {1, 2, 3, 5, 8, 20, 50}) {
        const ExactLaw law = law_kn(star, m);
        for (int r = 1; r <= 5; ++r)
          CHECK(rel_close(factorial_moment_kstar(star, m, r), law.factorial_moment(r),
                          1e-9));
      }
    }
}

TEST_CASE("factorial_moment_kstar fails loudly past the cancellation bound") {
  // Deep alternating cancellation at r = m with small alpha; the guard must
  // throw rather than return a digits-free value.
  CHECK_THROWS_AS(factorial_moment_kstar(ModelParams{0.05, 0.01}, 20, 20),
                  NumericError);
  CHECK_THROWS_AS(factorial_moment_kstar(ModelParams{0.25, 0.1}, 30, 30),
                  NumericError);
  // The exact-zero short circuit is a different, legitimate path.
  CHECK(factorial_moment_kstar(ModelParams{0.05, 0.01}, 19, 20) == 0.0);
}

TEST_CASE("factorial_moment_kstar mean is nondecreasing in m") {
  const ModelParams star{0.5, 9.0};
  double prev = 0.0;
  for (std::int64_t m = 1; m <= 30; ++m) {
    const double v = factorial_moment_kstar(star, m, 1);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("factorial_moment_mstar examples and oracle agreement") {
  CHECK(factorial_moment_mstar(ModelParams{0.5, 8.5}, 1, 1, 1) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(factorial_moment_mstar(ModelParams{0.5, 8.5}, 5, 2, 3) == 0.0);  // rl > m
  for (double alpha : {0.25, 0.5, 0.75})
    for (double theta : {0.5, 1.0, 5.0}) {
      const ModelParams star{alpha, theta + 8.0};
      for (int m = 1; m <= 12; ++m)
        for (int l : {1, 2, 3})
          for (int r = 1; r <= 3; ++r)
            CHECK(rel_close(
                factorial_moment_mstar(star, m, l, r),
                ewp_tests::ml_factorial_moment_oracle(alpha, theta + 8.0, m, l, r), 1e-9));
    }
}

TEST_CASE("beta_moments closed form") {
  const auto m = beta_moments(1.0, 1.0, 3);
  CHECK(m[0] == 1.0);
  CHECK(m[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m[2] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  const auto m2 = beta_moments(2.5, 4.0, 1);
  CHECK(m2[1] == doctest::Approx(2.5 / 6.5).epsilon(1e-15));
  CHECK_THROWS_AS(beta_moments(0.0, 1.0, 2), ValidationError);
}

TEST_CASE("binomial_moment fixed-count cases") {
  // n = 2, p = 1/2 constant: E[Z^2] = S(2,1)*2*0.5 + S(2,2)*2*0.25 = 1.5.
  const std::vector<double> p_const{1.0, 0.5, 0.25};
  CHECK(binomial_moment(std::int64_t(2), p_const, 2) ==
        doctest::Approx(1.5).epsilon(1e-14));
  // r = 1 is E[N] E[p].
  const std::vector<double> p1{1.0, 0.3};
  CHECK(binomial_moment(std::int64_t(7), p1, 1) == doctest::Approx(2.1).epsilon(1e-14));
  CHECK_THROWS_AS(binomial_moment(std::int64_t(2), p1, 3), ValidationError);
}

TEST_CASE("binomial_moment with p = 1 reconstructs raw moments") {
  const ExactLaw law = law_kn(ModelParams{0.5, 2.0}, 9);
  const std::vector<double> ones(7, 1.0);
  for (int r = 1; r <= 6; ++r) {
    double raw = 0.0;
    for (int k = 1; k <= 9; ++k) raw += law.prob(k) * std::pow(double(k), r);
    CHECK(rel_close(binomial_moment(law, ones, r), raw, 1e-11));
  }
}
