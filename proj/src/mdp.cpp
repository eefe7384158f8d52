#include "ewp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ewp/combinatorics.hpp"
#include "ewp/errors.hpp"
#include "ewp/exact.hpp"
#include "ewp/log_domain.hpp"
#include "ewp/parallel.hpp"

namespace ewp {

void ScaleSchedule::validate() const {
  if (!(c > 0.0)) throw ValidationError("ScaleSchedule: c must be positive");
  if (!(p >= 0.0)) throw ValidationError("ScaleSchedule: p must be >= 0");
}

double ScaleSchedule::beta(double n) const {
  return c * std::pow(n, p) * std::pow(std::log(n), q);
}

double ScaleSchedule::speed(double n, double alpha) const {
  return std::pow(beta(n), 1.0 / (1.0 - alpha));
}

std::int64_t ScaleSchedule::gamma_n(double n, double alpha) const {
  return std::int64_t(std::floor(speed(n, alpha)));
}

double ScaleSchedule::tilt(double n, double alpha, double lambda) const {
  return lambda * std::pow(n, -alpha) * std::pow(beta(n), alpha / (1.0 - alpha));
}

ScheduleVerdict validate_schedule(const ScaleSchedule& schedule, double alpha) {
  schedule.validate();
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("validate_schedule: alpha must lie in (0,1)");
  const double p = schedule.p, q = schedule.q;
  if (p >= 1.0 - alpha)
    return {false, "beta_n / n^(1-alpha) does not vanish (p >= 1-alpha)"};
  if (p == 0.0 && q <= 1.0 - alpha)
    return {false, "beta_n / (ln n)^(1-alpha) does not diverge (p = 0, q <= 1-alpha)"};
  return {true, "ok"};
}

double rate_k(double alpha, double x) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("rate_k: alpha must lie in (0,1)");
  if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
  return (1.0 - alpha) * std::pow(alpha, alpha / (1.0 - alpha)) *
         std::pow(x, 1.0 / (1.0 - alpha));
}

double rate_m(double alpha, int l, double x) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("rate_m: alpha must lie in (0,1)");
  if (l < 1) throw ValidationError("rate_m: l must be >= 1");
  if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
  const double rho = rising_factorial(1.0 - alpha, l - 1, 1.0);
  const double lf = std::exp(std::lgamma(double(l) + 1.0));
  return (1.0 - alpha) / alpha * std::pow(lf / rho, 1.0 / (1.0 - alpha)) *
         std::pow(x, 1.0 / (1.0 - alpha));
}

double limit_logmgf_k(double alpha, double lambda) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("limit_logmgf_k: alpha must lie in (0,1)");
  if (lambda <= 0.0) return 0.0;
  return std::pow(lambda, 1.0 / alpha);
}

double limit_logmgf_m(double alpha, int l, double lambda) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("limit_logmgf_m: alpha must lie in (0,1)");
  if (l < 1) throw ValidationError("limit_logmgf_m: l must be >= 1");
  if (lambda <= 0.0) return 0.0;
  const double rho = rising_factorial(1.0 - alpha, l - 1, 1.0);
  const double lf = std::exp(std::lgamma(double(l) + 1.0));
  return std::pow(alpha * rho / lf * lambda, 1.0 / alpha);
}

double legendre_rate(double alpha, std::optional<int> l, double x, double tol) {
  if (!(x > 0.0)) throw ValidationError("legendre_rate: x must be positive");
  if (!(tol > 0.0)) throw ValidationError("legendre_rate: tol must be positive");
  const auto limit = [&](double lambda) {
    return l ? limit_logmgf_m(alpha, *l, lambda) : limit_logmgf_k(alpha, lambda);
  };
  const auto objective = [&](double lambda) { return lambda * x - limit(lambda); };

  // Bracket the maximum: the objective rises from 0 and eventually falls.
  double hi = 1.0;
  int doublings = 0;
  while (objective(hi * 2.0) > objective(hi)) {
    hi *= 2.0;
    if (!std::isfinite(objective(hi)) || ++doublings > 600)
      throw NumericError("legendre_rate: failed to bracket the maximum");
  }
  double a = 0.0, b = hi * 2.0;
  const double inv_phi = 0.6180339887498948482;
  double c1 = b - inv_phi * (b - a);
  double c2 = a + inv_phi * (b - a);
  double f1 = objective(c1), f2 = objective(c2);
  for (int it = 0; it < 400 && (b - a) > tol * std::max(1.0, b); ++it) {
    if (f1 < f2) {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + inv_phi * (b - a);
      f2 = objective(c2);
    } else {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - inv_phi * (b - a);
      f1 = objective(c1);
    }
  }
  return objective(0.5 * (a + b));
}

EntropyForm entropy_form(double alpha, double x) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("entropy_form: alpha must lie in (0,1)");
  if (!(x > 0.0)) throw ValidationError("entropy_form: x must be positive");
  EntropyForm out;
  out.h_alpha = (1.0 - alpha) * std::log1p(-alpha) + alpha * std::log(alpha);
  out.value = std::exp((out.h_alpha + std::log(x)) / (1.0 - alpha));
  return out;
}

double critical_alpha(double x) {
  if (!(x > 1.0)) throw ValidationError("critical_alpha: x must exceed 1");
  // Golden-section minimization of alpha -> rate_k(alpha, x) on (0,1).
  double a = 1e-9, b = 1.0 - 1e-9;
  const double inv_phi = 0.6180339887498948482;
  double c1 = b - inv_phi * (b - a);
  double c2 = a + inv_phi * (b - a);
  double f1 = rate_k(c1, x), f2 = rate_k(c2, x);
  for (int it = 0; it < 300 && (b - a) > 1e-10; ++it) {
    if (f1 > f2) {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + inv_phi * (b - a);
      f2 = rate_k(c2, x);
    } else {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - inv_phi * (b - a);
      f1 = rate_k(c1, x);
    }
  }
  return 0.5 * (a + b);
}

const char* method_name(MgfMethod m) {
  switch (m) {
    case MgfMethod::series: return "series";
    case MgfMethod::dp: return "dp";
    case MgfMethod::mc: return "mc";
  }
  return "?";
}

namespace {

// ln((1/R) sum exp(values)) with max shift, plus the delta-method standard
// error of the log of the mean.
struct LogMeanExp {
  double log_mean = 0.0;
  double stderr_ = 0.0;
};

LogMeanExp log_mean_exp(std::span<const double> values) {
  const double mx = *std::max_element(values.begin(), values.end());
  double sum = 0.0, sum_sq = 0.0;
  for (double v : values) {
    const double w = std::exp(v - mx);
    sum += w;
    sum_sq += w * w;
  }
  const double r = double(values.size());
  const double mean = sum / r;
  const double var = std::max(0.0, sum_sq / r - mean * mean);
  LogMeanExp out;
  out.log_mean = mx + std::log(mean);
  out.stderr_ = r > 1 ? std::sqrt(var / r) / mean : 0.0;
  return out;
}

}  // namespace

MdpEntry scaled_logmgf(const ModelParams& params, const ScaleSchedule& schedule,
                       std::int64_t n, double lambda, Statistic stat, int l,
                       MgfMethod method, std::int64_t reps, std::uint64_t master_seed,
                       std::uint64_t stream_base, int workers) {
  params.validate();
  schedule.validate();
  if (n < 2) throw ValidationError("scaled_logmgf: n must be >= 2");
  if (stat == Statistic::M && l < 1)
    throw ValidationError("scaled_logmgf: M statistic needs l >= 1");
  const double alpha = params.alpha;
  if (!(alpha > 0.0)) throw ValidationError("scaled_logmgf: requires alpha > 0");

  MdpEntry entry;
  entry.n = n;
  entry.lambda = lambda;
  entry.beta_n = schedule.beta(double(n));
  entry.method = method;
  const double t = schedule.tilt(double(n), alpha, lambda);
  const double speed = schedule.speed(double(n), alpha);

  switch (method) {
    case MgfMethod::series: {
      if (params.theta != 0.0)
        throw ValidationError("scaled_logmgf: series method requires theta = 0");
      if (!(lambda > 0.0))
        throw ValidationError("scaled_logmgf: series method requires lambda > 0");
      const double y = -std::expm1(-t);  // 1 - exp(-t)
      const double log_mgf = stat == Statistic::K
                                 ? mgf_kn_series_log(alpha, n, y)
                                 : mgf_mln_series_log(alpha, n, l, y);
      entry.value = log_mgf / speed;
      break;
    }
    case MgfMethod::dp: {
      double log_mgf;
      if (stat == Statistic::K) {
        log_mgf = law_kn(params, n).log_mgf(t);
      } else {
        log_mgf = law_multiplicities(params, n).log_mgf_ml(l, t);
      }
      entry.value = log_mgf / speed;
      break;
    }
    case MgfMethod::mc: {
      if (reps < 2) throw ValidationError("scaled_logmgf: mc method needs reps >= 2");
      const std::function<double(std::int64_t)> one = [&](std::int64_t rep) {
        RngStream rng(master_seed, stream_base + std::uint64_t(rep));
        const std::int64_t x =
            stat == Statistic::K ? sample_kn(params, n, rng) : sample_mln(params, n, l, rng);
        return t * double(x);
      };
      const auto tilted = run_replicates<double>(reps, workers, one);
      const auto lme = log_mean_exp(tilted);
      entry.value = lme.log_mean / speed;
      entry.mc_stderr = lme.stderr_ / speed;
      break;
    }
  }
  return entry;
}

MdpScan run_mdp_scan(const ModelParams& params, const ScaleSchedule& schedule,
                     std::span<const std::int64_t> n_grid,
                     std::span<const double> lambda_grid, Statistic stat, int l,
                     MgfMethod method, std::int64_t reps, std::uint64_t master_seed,
                     int workers) {
  if (n_grid.empty() || lambda_grid.empty())
    throw ValidationError("run_mdp_scan: empty grid");
  // Entries are keyed by (n, lambda); a duplicated grid value would shadow.
  std::vector<std::int64_t> ns(n_grid.begin(), n_grid.end());
  std::sort(ns.begin(), ns.end());
  if (std::adjacent_find(ns.begin(), ns.end()) != ns.end())
    throw ValidationError("run_mdp_scan: duplicate n in the grid");
  std::vector<double> ls(lambda_grid.begin(), lambda_grid.end());
  std::sort(ls.begin(), ls.end());
  if (std::adjacent_find(ls.begin(), ls.end()) != ls.end())
    throw ValidationError("run_mdp_scan: duplicate lambda in the grid");
  MdpScan scan;
  scan.params = params;
  scan.schedule = schedule;
  scan.n_grid.assign(n_grid.begin(), n_grid.end());
  scan.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  scan.statistic = stat;
  scan.l = l;
  std::uint64_t stream_base = 0;
  for (double lambda : lambda_grid)
    for (std::int64_t n : n_grid) {
      scan.entries.push_back(scaled_logmgf(params, schedule, n, lambda, stat, l, method,
                                           reps, master_seed, stream_base, workers));
      if (method == MgfMethod::mc) stream_base += std::uint64_t(reps);
    }
  return scan;
}

bool PosteriorCompareReport::flagged() const {
  for (const auto& row : rows)
    if (row.flagged) return true;
  return false;
}

PosteriorCompareReport posterior_mdp_compare(const PosteriorContext& ctx,
                                             const ScaleSchedule& schedule,
                                             std::span<const std::int64_t> m_grid,
                                             std::span<const double> lambda_grid,
                                             std::int64_t reps, std::uint64_t master_seed,
                                             int workers) {
  ctx.validate();
  schedule.validate();
  if (m_grid.empty() || lambda_grid.empty())
    throw ValidationError("posterior_mdp_compare: empty grid");
  if (reps < 2 || reps > 100000)
    throw ValidationError("posterior_mdp_compare: reps must lie in [2, 1e5]");
  for (std::int64_t m : m_grid)
    if (m < 2 || m > 100000)
      throw ValidationError("posterior_mdp_compare: m must lie in [2, 1e5]");

  const double alpha = ctx.params.alpha;
  const std::int64_t m_max = *std::max_element(m_grid.begin(), m_grid.end());

  PosteriorCompareReport report;
  std::uint64_t stream_base = 0;
  for (std::int64_t m : m_grid) {
    const double speed = schedule.speed(double(m), alpha);
    // One posterior and one unconditional draw per replicate, shared across
    // the lambda grid.
    const std::uint64_t base_post = stream_base;
    const std::uint64_t base_unc = stream_base + std::uint64_t(reps);
    stream_base += 2 * std::uint64_t(reps);
    const std::function<std::int64_t(std::int64_t)> draw_post = [&](std::int64_t rep) {
      RngStream rng(master_seed, base_post + std::uint64_t(rep));
      return sample_posterior_k(ctx, m, rng);
    };
    const std::function<std::int64_t(std::int64_t)> draw_unc = [&](std::int64_t rep) {
      RngStream rng(master_seed, base_unc + std::uint64_t(rep));
      return sample_kn(ctx.params, m, rng);
    };
    const auto post_draws = run_replicates<std::int64_t>(reps, workers, draw_post);
    const auto unc_draws = run_replicates<std::int64_t>(reps, workers, draw_unc);

    for (double lambda : lambda_grid) {
      const double t = schedule.tilt(double(m), alpha, lambda);
      std::vector<double> tp(reps), tu(reps);
      for (std::int64_t i = 0; i < reps; ++i) {
        tp[i] = t * double(post_draws[i]);
        tu[i] = t * double(unc_draws[i]);
      }
      const auto lp = log_mean_exp(tp);
      const auto lu = log_mean_exp(tu);
      PosteriorCompareRow row;
      row.m = m;
      row.lambda = lambda;
      row.posterior = lp.log_mean / speed;
      row.posterior_se = lp.stderr_ / speed;
      row.unconditional = lu.log_mean / speed;
      row.unconditional_se = lu.stderr_ / speed;
      const double combined =
          std::sqrt(row.posterior_se * row.posterior_se +
                    row.unconditional_se * row.unconditional_se);
      row.flagged = (m == m_max) &&
                    std::abs(row.posterior - row.unconditional) > 4.0 * combined;
      report.rows.push_back(row);
    }
  }
  return report;
}

CltReport clt_diagnostic(double theta, std::int64_t n, std::int64_t reps,
                         std::uint64_t master_seed, int workers) {
  if (!(theta > 0.0)) throw ValidationError("clt_diagnostic: theta must be positive");
  if (n < 1 || reps < 1) throw ValidationError("clt_diagnostic: n and reps must be >= 1");

  CltReport rep;
  rep.n = n;
  rep.reps = reps;
  for (std::int64_t i = 1; i <= n; ++i) {
    const double p = theta / (theta + double(i - 1));
    rep.exact_mean += p;
    rep.exact_var += p * (1.0 - p);
  }

  const std::function<std::int64_t(std::int64_t)> one = [&](std::int64_t r) {
    RngStream rng(master_seed, std::uint64_t(r));
    return bernoulli_kn_alpha0(theta, n, rng);
  };
  const auto draws = run_replicates<std::int64_t>(reps, workers, one);

  double m1 = 0.0;
  for (auto k : draws) m1 += double(k);
  m1 /= double(reps);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (auto k : draws) {
    const double d = double(k) - m1;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= double(reps);
  m3 /= double(reps);
  m4 /= double(reps);

  rep.empirical_mean = m1;
  rep.empirical_var = reps > 1 ? m2 * double(reps) / double(reps - 1) : 0.0;
  rep.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;

  if (reps > 1) {
    const double se_mean = std::sqrt(rep.empirical_var / double(reps));
    // Moment-based standard error of the sample variance.
    const double se_var = std::sqrt(std::max(0.0, m4 - m2 * m2) / double(reps));
    rep.mean_z = se_mean > 0.0 ? std::abs(m1 - rep.exact_mean) / se_mean : 0.0;
    rep.var_z =
        se_var > 0.0 ? std::abs(rep.empirical_var - rep.exact_var) / se_var : 0.0;
    rep.flagged = rep.mean_z > 4.0 || rep.var_z > 4.0;
  }
  return rep;
}

RatioReport limit_ratio_diagnostic(const ModelParams& params, std::int64_t n, int l_max,
                                   std::int64_t reps, std::uint64_t master_seed,
                                   int workers) {
  params.validate_positive_alpha();
  if (n < 1 || reps < 1 || l_max < 1)
    throw ValidationError("limit_ratio_diagnostic: bad arguments");

  struct RepStats {
    double k_ratio = 0.0;
    std::vector<double> ml_over_k;
  };
  const std::int64_t cp[] = {n};
  const std::function<RepStats(std::int64_t)> one = [&](std::int64_t r) {
    RngStream rng(master_seed, std::uint64_t(r));
    const auto path = sample_path(params, cp, l_max, rng);
    const auto& pt = path.back();
    RepStats st;
    st.k_ratio = double(pt.k) / std::pow(double(n), params.alpha);
    st.ml_over_k.resize(l_max);
    for (int l = 1; l <= l_max; ++l)
      st.ml_over_k[l - 1] = double(pt.m[l - 1]) / double(pt.k);
    return st;
  };
  const auto stats = run_replicates<RepStats>(reps, workers, one);

  const auto mean_se = [&](const std::function<double(const RepStats&)>& get) {
    double mean = 0.0;
    for (const auto& s : stats) mean += get(s);
    mean /= double(reps);
    double var = 0.0;
    for (const auto& s : stats) {
      const double d = get(s) - mean;
      var += d * d;
    }
    var = reps > 1 ? var / double(reps - 1) : 0.0;
    return std::pair<double, double>(mean, std::sqrt(var / double(reps)));
  };

  RatioReport out;
  out.n = n;
  out.reps = reps;
  std::tie(out.k_ratio_mean, out.k_ratio_se) =
      mean_se([](const RepStats& s) { return s.k_ratio; });
  if (n <= 20000) {
    const ExactLaw law = law_kn(params, n);
    out.k_ratio_exact = law.mean() / std::pow(double(n), params.alpha);
    if (out.k_ratio_se > 0.0)
      out.k_ratio_z = std::abs(out.k_ratio_mean - *out.k_ratio_exact) / out.k_ratio_se;
  }
  for (int l = 1; l <= l_max; ++l) {
    RatioReport::PerL row;
    row.l = l;
    std::tie(row.ratio_mean, row.ratio_se) =
        mean_se([l](const RepStats& s) { return s.ml_over_k[l - 1]; });
    row.limit = log_gen_binom(params.alpha, l).value() * ((l - 1) % 2 == 0 ? 1.0 : -1.0);
    out.per_l.push_back(row);
  }
  return out;
}

}  // namespace ewp
