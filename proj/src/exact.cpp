#include "ewp/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "ewp/combinatorics.hpp"
#include "ewp/errors.hpp"
#include "ewp/log_domain.hpp"

namespace ewp {

namespace {
constexpr std::int64_t kLawKnMax = 20000;
constexpr std::int64_t kMultiplicityMax = 14;
constexpr int kMomentRMax = 30;
constexpr double kCancellationLimit = 1e12;
}  // namespace

double ExactLaw::prob(std::int64_t k) const {
  if (k < 0 || k > n) return 0.0;
  return std::exp(log_prob[k]);
}

double ExactLaw::mean() const {
  double s = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) s += prob(k) * double(k);
  return s;
}

double ExactLaw::factorial_moment(int r) const {
  if (r < 0) throw ValidationError("factorial_moment: r must be >= 0");
  double s = 0.0;
  for (std::int64_t k = 1; k <= n; ++k)
    s += prob(k) * falling_factorial(double(k), r);
  return s;
}

double ExactLaw::log_mgf(double t) const {
  LogSumAccumulator acc;
  for (std::int64_t k = 1; k <= n; ++k) acc.add(log_prob[k] + t * double(k));
  return acc.log_total();
}

ExactLaw law_kn(const ModelParams& params, std::int64_t n) {
  params.validate();
  if (n < 1) throw ValidationError("law_kn: n must be >= 1");
  if (n > kLawKnMax)
    throw ResourceError("law_kn: n exceeds the quadratic-cost guard " +
                        std::to_string(kLawKnMax));
  const double alpha = params.alpha, theta = params.theta;

  std::vector<double> lp(n + 1, neg_inf);
  lp[1] = 0.0;  // P(K_1 = 1) = 1
  // log(theta + k*alpha) for the new-block coefficient, k >= 1. The k = 0
  // coefficient only ever multiplies P(K = 0) = 0 and is never evaluated.
  std::vector<double> log_new(n, 0.0);
  for (std::int64_t k = 1; k < n; ++k) log_new[k] = std::log(theta + double(k) * alpha);

  for (std::int64_t nn = 1; nn < n; ++nn) {
    const double log_norm = std::log(theta + double(nn));
    // In place, descending k: lp[k-1] is still the old row when k is updated.
    for (std::int64_t k = std::min<std::int64_t>(nn + 1, n); k >= 1; --k) {
      double stay = neg_inf;
      if (k <= nn && lp[k] != neg_inf)
        stay = lp[k] + std::log(double(nn) - double(k) * alpha);
      double up = neg_inf;
      if (k >= 2 && lp[k - 1] != neg_inf) up = lp[k - 1] + log_new[k - 1];
      lp[k] = log_add(stay, up) - log_norm;
    }
  }
  return ExactLaw{n, std::move(lp)};
}

std::int64_t MultiplicityLaw::Atom::num_blocks() const {
  return std::accumulate(hist.begin(), hist.end(), std::int64_t(0));
}

double MultiplicityLaw::factorial_moment_ml(int l, int r) const {
  double s = 0.0;
  for (const auto& atom : atoms)
    s += atom.prob * falling_factorial(double(atom.count_of(l)), r);
  return s;
}

double MultiplicityLaw::log_mgf_ml(int l, double t) const {
  LogSumAccumulator acc;
  for (const auto& atom : atoms)
    acc.add(std::log(atom.prob) + t * double(atom.count_of(l)));
  return acc.log_total();
}

ExactLaw MultiplicityLaw::marginal_k() const {
  std::vector<double> p(n + 1, 0.0);
  for (const auto& atom : atoms) p[atom.num_blocks()] += atom.prob;
  std::vector<double> lp(n + 1, neg_inf);
  for (std::int64_t k = 0; k <= n; ++k)
    if (p[k] > 0.0) lp[k] = std::log(p[k]);
  return ExactLaw{n, std::move(lp)};
}

MultiplicityLaw law_multiplicities(const ModelParams& params, std::int64_t n) {
  params.validate();
  if (n < 1) throw ValidationError("law_multiplicities: n must be >= 1");
  if (n > kMultiplicityMax)
    throw ResourceError("law_multiplicities: n exceeds the enumeration guard " +
                        std::to_string(kMultiplicityMax));
  const double alpha = params.alpha, theta = params.theta;

  // Histogram keyed map; states are the integer partitions of the current
  // sample size, so the map never exceeds p(14) = 135 entries.
  std::map<std::vector<std::int64_t>, double> states;
  states[{}] = 1.0;
  for (std::int64_t nn = 0; nn < n; ++nn) {
    std::map<std::vector<std::int64_t>, double> next;
    for (const auto& [hist, pr] : states) {
      const std::int64_t k =
          std::accumulate(hist.begin(), hist.end(), std::int64_t(0));
      const double total = theta + double(nn);
      {
        const double w = nn == 0 ? 1.0 : (theta + double(k) * alpha) / total;
        auto h = hist;
        if (h.empty()) h.resize(1, 0);
        ++h[0];
        next[std::move(h)] += pr * w;
      }
      for (std::int64_t s = 1; s <= std::int64_t(hist.size()); ++s) {
        if (hist[s - 1] == 0) continue;
        const double w = (double(s) - alpha) * double(hist[s - 1]) / total;
        auto h = hist;
        --h[s - 1];
        if (std::int64_t(h.size()) < s + 1) h.resize(s + 1, 0);
        ++h[s];
        next[std::move(h)] += pr * w;
      }
    }
    states = std::move(next);
  }

  MultiplicityLaw law;
  law.n = n;
  law.atoms.reserve(states.size());
  for (auto& [hist, pr] : states) {
    auto h = hist;
    h.resize(n, 0);
    law.atoms.push_back({std::move(h), pr});
  }
  return law;
}

double mgf_kn_series_log(double alpha, std::int64_t n, double y) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("mgf_kn_series_log: alpha must lie in (0,1)");
  if (n < 1) throw ValidationError("mgf_kn_series_log: n must be >= 1");
  if (!(y > 0.0 && y < 1.0))
    throw ValidationError("mgf_kn_series_log: y must lie in (0,1)");

  const double log_y = std::log(y);
  const double lg_n = std::lgamma(double(n));
  LogSumAccumulator acc;

  constexpr std::int64_t kMaxTerms = 100000000;
  constexpr double kRelTol = 1e-14;
  const double log_tol = std::log(kRelTol);

  int below = 0;
  double prev_lt = neg_inf;
  for (std::int64_t i = 0; i < kMaxTerms; ++i) {
    const double ia = double(i) * alpha;
    const double lt =
        double(i) * log_y + std::lgamma(ia + double(n)) - std::lgamma(ia + 1.0) - lg_n;
    acc.add(lt);
    const double threshold = acc.log_total() + log_tol;
    if (lt < threshold) {
      ++below;
      if (below >= 20 && prev_lt != neg_inf && lt < prev_lt) {
        // Term ratios decrease toward y past the peak, so a geometric tail
        // bound with the observed ratio dominates the true tail.
        const double ratio = std::exp(lt - prev_lt);
        const double log_tail = lt + std::log(ratio / (1.0 - ratio));
        if (log_tail < threshold) return acc.log_total();
      }
    } else {
      below = 0;
    }
    prev_lt = lt;
  }
  std::string tail = "n/a";
  if (prev_lt != neg_inf) tail = std::to_string(prev_lt);
  throw NumericError(
      "mgf_kn_series_log: series did not converge within 1e8 terms "
      "(partial log-sum " +
      std::to_string(acc.log_total()) + ", last log-term " + tail +
      ", y = " + std::to_string(y) + ")");
}

double mgf_mln_series_log(double alpha, std::int64_t n, int l, double y) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("mgf_mln_series_log: alpha must lie in (0,1)");
  if (n < 1) throw ValidationError("mgf_mln_series_log: n must be >= 1");
  if (l < 1 || l > n) throw ValidationError("mgf_mln_series_log: need 1 <= l <= n");
  if (!(y > 0.0 && y < 1.0))
    throw ValidationError("mgf_mln_series_log: y must lie in (0,1)");

  // log y_{n,l} = log(alpha (1-alpha)_{(l-1)^1} / l!) + log(y/(1-y))
  const SignedLog rho = log_rising_factorial(1.0 - alpha, l - 1, 1.0);
  const double log_ynl = std::log(alpha) + rho.log_abs - std::lgamma(double(l) + 1.0) +
                         std::log(y) - std::log1p(-y);

  LogSumAccumulator acc;
  const std::int64_t imax = n / l;
  for (std::int64_t i = 0; i <= imax; ++i) {
    const double rem = double(n - i * l);
    const double ia = double(i) * alpha;
    double lt = double(i) * log_ynl;
    lt += std::log(double(n)) - std::log(rem + ia);
    lt += std::lgamma(rem + ia + 1.0) - std::lgamma(ia + 1.0) - std::lgamma(rem + 1.0);
    acc.add(lt);
  }
  return acc.log_total();
}

namespace {

// (theta'+shift)_{m^1} / (theta')_{m^1} in long double: direct product for
// moderate m (keeps relative error near machine epsilon for the alternating
// sum), log-gamma beyond.
long double rising_ratio(long double theta_p, long double shift, std::int64_t m) {
  if (m <= 4096) {
    long double r = 1.0L;
    for (std::int64_t s = 0; s < m; ++s)
      r *= (theta_p + shift + s) / (theta_p + s);
    return r;
  }
  return std::exp(std::lgamma(theta_p + shift + m) - std::lgamma(theta_p + shift) -
                   std::lgamma(theta_p + m) + std::lgamma(theta_p));
}

void check_moment_args(const ModelParams& params, std::int64_t m, int r) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0))
    throw ValidationError("factorial moment: alpha must lie in (0,1)");
  if (!(params.theta > 0.0))
    throw ValidationError("factorial moment: requires theta' = theta + n > 0");
  if (m < 1) throw ValidationError("factorial moment: m must be >= 1");
  if (r < 0 || r > kMomentRMax)
    throw ValidationError("factorial moment: r must lie in [0, " +
                          std::to_string(kMomentRMax) + "]");
}

}  // namespace

double factorial_moment_kstar(const ModelParams& params_post, std::int64_t m, int r) {
  check_moment_args(params_post, m, r);
  if (r == 0) return 1.0;
  if (r > m) return 0.0;  // K*_m <= m makes the falling factorial vanish

  const long double alpha = params_post.alpha;
  const long double theta_p = params_post.theta;

  std::vector<long double> terms(r + 1);
  long double binom = 1.0L;  // C(r, i), updated multiplicatively
  for (int i = 0; i <= r; ++i) {
    const long double ratio = rising_ratio(theta_p, i * alpha, m);
    terms[i] = ((r - i) % 2 == 0 ? binom : -binom) * ratio;
    binom = binom * (r - i) / (i + 1);
  }
  std::sort(terms.begin(), terms.end(),
            [](long double a, long double b) { return std::fabs(a) < std::fabs(b); });
  long double sum = 0.0L, comp = 0.0L, max_abs = 0.0L;
  for (long double t : terms) {
    max_abs = std::max(max_abs, std::fabs(t));
    const long double y = t - comp;
    const long double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  // The true moment is strictly positive for r <= m, so a vanishing sum of
  // nonzero terms means the cancellation consumed every significant digit.
  if (sum == 0.0L || max_abs / std::fabs(sum) > kCancellationLimit) {
    const double estimate =
        sum == 0.0L ? std::numeric_limits<double>::infinity()
                    : double(max_abs / std::fabs(sum));
    throw NumericError("factorial_moment_kstar: cancellation estimate " +
                       std::to_string(estimate) + " exceeds 1e12 (m=" +
                       std::to_string(m) + ", r=" + std::to_string(r) + ")");
  }

  long double pref = 1.0L;
  for (int i = 0; i < r; ++i) pref *= theta_p / alpha + i;
  return double(pref * sum);
}

double factorial_moment_mstar(const ModelParams& params_post, std::int64_t m, int l, int r) {
  check_moment_args(params_post, m, r);
  if (l < 1) throw ValidationError("factorial_moment_mstar: l must be >= 1");
  if (r == 0) return 1.0;
  if (std::int64_t(r) * l > m) return 0.0;  // (m)_{rl v 1} contains a zero factor

  const long double alpha = params_post.alpha;
  const long double theta_p = params_post.theta;
  const std::int64_t rl = std::int64_t(r) * l;

  long double log_val = 0.0L;
  for (std::int64_t i = 0; i < rl; ++i) log_val += std::log((long double)(m - i));
  // r * log(alpha (1-alpha)_{(l-1)^1} / l!)
  long double log_c = std::log(alpha) - std::lgamma((long double)l + 1.0L);
  for (int j = 0; j < l - 1; ++j) log_c += std::log(1.0L - alpha + j);
  log_val += r * log_c;
  for (int i = 0; i < r; ++i) log_val += std::log(theta_p / alpha + i);
  log_val += std::lgamma(theta_p + r * alpha + (m - rl)) - std::lgamma(theta_p + r * alpha);
  log_val -= std::lgamma(theta_p + m) - std::lgamma(theta_p);
  return double(std::exp(log_val));
}

std::vector<double> beta_moments(double a, double b, int r_max) {
  if (!(a > 0.0) || !(b > 0.0))
    throw ValidationError("beta_moments: parameters must be positive");
  if (r_max < 0) throw ValidationError("beta_moments: r_max must be >= 0");
  std::vector<double> out(r_max + 1, 1.0);
  for (int t = 1; t <= r_max; ++t)
    out[t] = out[t - 1] * (a + t - 1) / (a + b + t - 1);
  return out;
}

double binomial_moment_from_factorial(std::span<const double> n_factorial_moments,
                                      std::span<const double> p_moments, int r) {
  if (r < 0 || r > stirling_table().max_n())
    throw ValidationError("binomial_moment: r outside the Stirling table bound");
  if (std::int64_t(p_moments.size()) <= r)
    throw ValidationError("binomial_moment: p_moments must have at least r+1 entries");
  if (std::int64_t(n_factorial_moments.size()) <= r)
    throw ValidationError("binomial_moment: n_factorial_moments must have at least r+1 entries");
  double s = 0.0;
  for (int t = 0; t <= r; ++t)
    s += stirling2(r, t) * n_factorial_moments[t] * p_moments[t];
  return s;
}

double binomial_moment(const ExactLaw& k_law, std::span<const double> p_moments, int r) {
  std::vector<double> fm(r + 1);
  for (int t = 0; t <= r; ++t) fm[t] = k_law.factorial_moment(t);
  return binomial_moment_from_factorial(fm, p_moments, r);
}

double binomial_moment(std::int64_t fixed_k, std::span<const double> p_moments, int r) {
  if (fixed_k < 0) throw ValidationError("binomial_moment: k must be >= 0");
  std::vector<double> fm(r + 1);
  for (int t = 0; t <= r; ++t) fm[t] = falling_factorial(double(fixed_k), t);
  return binomial_moment_from_factorial(fm, p_moments, r);
}

}  // namespace ewp
