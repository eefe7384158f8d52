#ifndef EWP_EXACT_HPP
#define EWP_EXACT_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ewp/sampler.hpp"

namespace ewp {

// Law of K_n in log domain; support is 1..n (index k into log_prob).
struct ExactLaw {
  std::int64_t n = 0;
  std::vector<double> log_prob;  // size n+1, log_prob[0] = -inf for n >= 1

  double prob(std::int64_t k) const;
  double mean() const;
  // E[(K)_{r v 1}] = sum_k P(k) k(k-1)...(k-r+1).
  double factorial_moment(int r) const;
  // log E[exp(t K)].
  double log_mgf(double t) const;
};

// Exact joint law of the block-size histogram for small n. Atoms are the
// integer partitions of n stored as histograms (hist[l-1] = M_l).
struct MultiplicityLaw {
  struct Atom {
    std::vector<std::int64_t> hist;
    double prob = 0.0;
    std::int64_t count_of(int l) const {
      return (l >= 1 && l <= std::int64_t(hist.size())) ? hist[l - 1] : 0;
    }
    std::int64_t num_blocks() const;
  };
  std::int64_t n = 0;
  std::vector<Atom> atoms;

  double factorial_moment_ml(int l, int r) const;  // E[(M_l)_{r v 1}]
  double log_mgf_ml(int l, double t) const;        // log E[exp(t M_l)]
  ExactLaw marginal_k() const;
};

// Forward DP on P(K_n = k); quadratic in n, guarded at n <= 20000.
ExactLaw law_kn(const ModelParams& params, std::int64_t n);

// DP over integer-partition states; guarded at n <= 14 (135 states).
MultiplicityLaw law_multiplicities(const ModelParams& params, std::int64_t n);

// log E[(1-y)^{-K_n}] under PD(alpha, 0) via the series
// sum_{i>=0} y^i C(i*alpha + n - 1, n - 1), adaptively truncated.
double mgf_kn_series_log(double alpha, std::int64_t n, double y);

// log E[(1-y)^{-M_{l,n}}] under PD(alpha, 0) via the finite sum
// sum_{i=0}^{floor(n/l)} y_{n,l}^i (n/(n-il+alpha i)) C(n-il+i*alpha, n-il),
// y_{n,l} = (alpha (1-alpha)_{(l-1)^1} / l!) y/(1-y).
double mgf_mln_series_log(double alpha, std::int64_t n, int l, double y);

// E[(K*_m)_{r v 1}] under PD(alpha, theta') with theta' > 0:
//   (theta'/alpha)_{r^1} sum_{i=0}^r (-1)^{r-i} C(r,i)
//       (theta'+i alpha)_{m^1} / (theta')_{m^1}.
// The alternating sum is evaluated in extended precision with compensated
// summation; an estimated cancellation beyond 1e12 throws NumericError.
double factorial_moment_kstar(const ModelParams& params_post, std::int64_t m, int r);

// E[(M*_{l,m})_{r v 1}] under PD(alpha, theta'):
//   (m)_{rl v 1} (alpha (1-alpha)_{(l-1)^1}/l!)^r (theta'/alpha)_{r^1}
//       (theta'+r alpha)_{(m-rl)^1} / (theta')_{m^1}.
double factorial_moment_mstar(const ModelParams& params_post, std::int64_t m, int l, int r);

// E[B^t] for B ~ Beta(a,b), t = 0..r_max: (a)_{t^1} / (a+b)_{t^1}.
std::vector<double> beta_moments(double a, double b, int r_max);

// E[Z^r] for Z = Binomial(N, p) with independent N and p:
// sum_t S(r,t) E[(N)_{t v 1}] E[p^t]. n_factorial_moments[t] = E[(N)_{t v 1}].
double binomial_moment_from_factorial(std::span<const double> n_factorial_moments,
                                      std::span<const double> p_moments, int r);
double binomial_moment(const ExactLaw& k_law, std::span<const double> p_moments, int r);
double binomial_moment(std::int64_t fixed_k, std::span<const double> p_moments, int r);

}  // namespace ewp

#endif
