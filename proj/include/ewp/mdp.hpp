#ifndef EWP_MDP_HPP
#define EWP_MDP_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ewp/posterior.hpp"
#include "ewp/sampler.hpp"

namespace ewp {

// Scaling sequence beta_n = c * n^p * (ln n)^q. Valid for the moderate
// deviation regime at a given alpha iff beta_n = o(n^{1-alpha}) and
// (ln n)^{1-alpha} = o(beta_n):  p < 1-alpha  and  (p > 0 or q > 1-alpha).
struct ScaleSchedule {
  double c = 1.0;
  double p = 0.25;
  double q = 0.0;

  void validate() const;
  double beta(double n) const;
  // Speed beta_n^{1/(1-alpha)}.
  double speed(double n, double alpha) const;
  // gamma_n = floor(beta_n^{1/(1-alpha)}).
  std::int64_t gamma_n(double n, double alpha) const;
  // Tilt applied to the raw statistic: lambda * n^{-alpha} * beta_n^{alpha/(1-alpha)}.
  double tilt(double n, double alpha, double lambda) const;
};

struct ScheduleVerdict {
  bool valid = false;
  std::string reason;
};

ScheduleVerdict validate_schedule(const ScaleSchedule& schedule, double alpha);

// Rate function of K_n/(n^alpha beta_n):
// (1-alpha) alpha^{alpha/(1-alpha)} x^{1/(1-alpha)} for x > 0, +inf otherwise.
double rate_k(double alpha, double x);

// Rate function of M_{l,n}/(n^alpha beta_n), the Legendre transform of
// limit_logmgf_m: ((1-alpha)/alpha) (l!/(1-alpha)_{(l-1)^1})^{1/(1-alpha)}
// x^{1/(1-alpha)} for x > 0, +inf otherwise. For l = 1 this is rate_k(x/alpha),
// matching M_{1,n} ~ alpha K_n.
double rate_m(double alpha, int l, double x);

// Limiting scaled log-MGFs: lambda^{1/alpha} for K and
// ((alpha (1-alpha)_{(l-1)^1}/l!) lambda)^{1/alpha} for M_l, 0 for lambda <= 0.
double limit_logmgf_k(double alpha, double lambda);
double limit_logmgf_m(double alpha, int l, double lambda);

// sup_{lambda > 0} { lambda x - Lambda(lambda) } by golden-section search on
// the concave objective; K mode when l is nullopt.
double legendre_rate(double alpha, std::optional<int> l, double x, double tol = 1e-12);

struct EntropyForm {
  double h_alpha = 0.0;  // (1-alpha) ln(1-alpha) + alpha ln(alpha)
  double value = 0.0;    // exp{ (H_alpha + ln x) / (1-alpha) }
};

EntropyForm entropy_form(double alpha, double x);

// argmin over alpha in (0,1) of rate_k(alpha, x) for x > 1; equals 1/x.
double critical_alpha(double x);

enum class Statistic { K, M };
enum class MgfMethod { series, dp, mc };

struct MdpEntry {
  std::int64_t n = 0;
  double lambda = 0.0;
  double beta_n = 0.0;
  double value = 0.0;  // scaled log-MGF
  MgfMethod method = MgfMethod::series;
  std::optional<double> mc_stderr;
};

const char* method_name(MgfMethod m);

// Finite-n scaled log-MGF  beta_n^{-1/(1-alpha)} ln E[exp(tilt * statistic)].
// series: theta = 0 required; lambda > 0. dp: n <= 20000 for K, n <= 14 for
// M. mc: alpha > 0, any lambda; the entry carries a delta-method standard
// error and replicate r uses stream_index = stream_base + r.
MdpEntry scaled_logmgf(const ModelParams& params, const ScaleSchedule& schedule,
                       std::int64_t n, double lambda, Statistic stat, int l,
                       MgfMethod method, std::int64_t reps = 0,
                       std::uint64_t master_seed = 0, std::uint64_t stream_base = 0,
                       int workers = 1);

// A full (n, lambda) grid of scaled log-MGFs; entries are keyed uniquely by
// (n, lambda) in grid order.
struct MdpScan {
  ModelParams params;
  ScaleSchedule schedule;
  std::vector<double> lambda_grid;
  std::vector<std::int64_t> n_grid;
  Statistic statistic = Statistic::K;
  int l = 1;
  std::vector<MdpEntry> entries;
};

MdpScan run_mdp_scan(const ModelParams& params, const ScaleSchedule& schedule,
                     std::span<const std::int64_t> n_grid,
                     std::span<const double> lambda_grid, Statistic stat, int l,
                     MgfMethod method, std::int64_t reps = 0,
                     std::uint64_t master_seed = 0, int workers = 1);

struct PosteriorCompareRow {
  std::int64_t m = 0;
  double lambda = 0.0;
  double posterior = 0.0;
  double posterior_se = 0.0;
  double unconditional = 0.0;
  double unconditional_se = 0.0;
  bool flagged = false;  // separation beyond 4 combined SE at the largest m
};

struct PosteriorCompareReport {
  std::vector<PosteriorCompareRow> rows;
  bool flagged() const;
};

// Side-by-side Monte Carlo scaled log-MGFs of the posterior diversity
// K~_m^(n) and of K_m under PD(alpha, theta).
PosteriorCompareReport posterior_mdp_compare(const PosteriorContext& ctx,
                                             const ScaleSchedule& schedule,
                                             std::span<const std::int64_t> m_grid,
                                             std::span<const double> lambda_grid,
                                             std::int64_t reps, std::uint64_t master_seed,
                                             int workers = 1);

struct CltReport {
  std::int64_t n = 0;
  std::int64_t reps = 0;
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  double exact_mean = 0.0;
  double exact_var = 0.0;
  double mean_z = 0.0;  // |empirical - exact| in estimator SEs
  double var_z = 0.0;
  double skewness = 0.0;  // of (K_n - exact_mean)/sqrt(exact_var)
  bool flagged = false;   // either z beyond 4
};

// alpha = 0 diagnostic: empirical mean/variance of the Bernoulli-sum K_n
// against the exact values sum p_i, sum p_i(1-p_i), p_i = theta/(theta+i-1).
CltReport clt_diagnostic(double theta, std::int64_t n, std::int64_t reps,
                         std::uint64_t master_seed, int workers = 1);

struct RatioReport {
  std::int64_t n = 0;
  std::int64_t reps = 0;
  double k_ratio_mean = 0.0;  // mean of K_n / n^alpha
  double k_ratio_se = 0.0;
  // Exact anchor E[K_n]/n^alpha from the DP law (only when n is DP-feasible).
  std::optional<double> k_ratio_exact;
  std::optional<double> k_ratio_z;
  struct PerL {
    int l = 0;
    double ratio_mean = 0.0;  // mean of M_{l,n} / K_n
    double ratio_se = 0.0;
    double limit = 0.0;  // p_{alpha,l} = (-1)^{l-1} C(alpha, l)
  };
  std::vector<PerL> per_l;
};

// Almost-sure limit diagnostic: per-replicate K_n/n^alpha and M_{l,n}/K_n
// for l = 1..l_max against the alpha-diversity ratios.
RatioReport limit_ratio_diagnostic(const ModelParams& params, std::int64_t n, int l_max,
                                   std::int64_t reps, std::uint64_t master_seed,
                                   int workers = 1);

}  // namespace ewp

#endif
