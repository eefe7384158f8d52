#include "ewp/posterior.hpp"

#include <cmath>
#include <string>

#include "ewp/combinatorics.hpp"
#include "ewp/errors.hpp"

namespace ewp {

void PosteriorContext::validate() const {
  params.validate_positive_alpha();
  if (n < 1) throw ValidationError("PosteriorContext: n must be >= 1");
  if (j < 1 || j > n) throw ValidationError("PosteriorContext: need 1 <= j <= n");
  if (!(beta_a() > 0.0))
    throw ValidationError("PosteriorContext: theta/alpha + j must be positive");
  if (!(beta_b() > 0.0))
    throw ValidationError("PosteriorContext: n/alpha - j must be positive");
}

PosteriorDraw sample_posterior_k_draw(const PosteriorContext& ctx, std::int64_t m,
                                      RngStream& rng) {
  ctx.validate();
  if (m < 0) throw ValidationError("sample_posterior_k: m must be >= 0");
  if (m == 0) return {};
  PosteriorDraw d;
  d.eta = rng.beta(ctx.beta_a(), ctx.beta_b());
  d.star = sample_kn(ctx.star_params(), m, rng);
  d.z = rng.binomial(d.star, d.eta);
  return d;
}

std::int64_t sample_posterior_k(const PosteriorContext& ctx, std::int64_t m, RngStream& rng) {
  return sample_posterior_k_draw(ctx, m, rng).z;
}

std::int64_t sample_posterior_m(const PosteriorContext& ctx, std::int64_t m, int l,
                                RngStream& rng) {
  ctx.validate();
  if (m < 0) throw ValidationError("sample_posterior_m: m must be >= 0");
  if (l < 1 || (m > 0 && l > m))
    throw ValidationError("sample_posterior_m: need 1 <= l <= m");
  if (m == 0) return 0;
  const double eta = rng.beta(ctx.beta_a(), ctx.beta_b());
  const std::int64_t m_star = sample_mln(ctx.star_params(), m, l, rng);
  return rng.binomial(m_star, eta);
}

namespace {

double posterior_moment_impl(const PosteriorContext& ctx, std::int64_t m,
                             std::optional<int> l, int r) {
  ctx.validate();
  if (m < 1) throw ValidationError("posterior moment: m must be >= 1");
  if (r < 0) throw ValidationError("posterior moment: r must be >= 0");
  if (r == 0) return 1.0;
  const auto bm = beta_moments(ctx.beta_a(), ctx.beta_b(), r);
  const ModelParams star = ctx.star_params();
  double s = 0.0;
  for (int t = 0; t <= r; ++t) {
    const double fm = l ? factorial_moment_mstar(star, m, *l, t)
                        : factorial_moment_kstar(star, m, t);
    s += stirling2(r, t) * bm[t] * fm;
  }
  return s;
}

}  // namespace

double posterior_moment_k(const PosteriorContext& ctx, std::int64_t m, int r) {
  return posterior_moment_impl(ctx, m, std::nullopt, r);
}

double posterior_moment_m(const PosteriorContext& ctx, std::int64_t m, int l, int r) {
  if (l < 1 || l > m) throw ValidationError("posterior_moment_m: need 1 <= l <= m");
  return posterior_moment_impl(ctx, m, l, r);
}

bool RepresentationReport::flagged() const {
  for (const auto& row : rows)
    if (row.flag_oracle || row.flag_mc) return true;
  return false;
}

RepresentationReport verify_representation(const PosteriorContext& ctx, std::int64_t m,
                                           std::optional<int> l, const VerifyOptions& opts,
                                           RngStream& rng) {
  ctx.validate();
  if (l && (*l < 1 || *l > m))
    throw ValidationError("verify_representation: need 1 <= l <= m");
  if (l) {
    if (m > 12) throw ValidationError("verify_representation: enumeration mode needs m <= 12");
  } else {
    if (m > 200) throw ValidationError("verify_representation: DP mode needs m <= 200");
  }
  if (opts.r_max < 0 || opts.reps < 1)
    throw ValidationError("verify_representation: bad options");

  const ModelParams star = ctx.star_params();
  const auto bm = beta_moments(ctx.beta_a(), ctx.beta_b(), opts.r_max);

  // Oracle factorial moments of the star statistic from the exact laws.
  std::vector<double> fm(opts.r_max + 1);
  if (l) {
    const MultiplicityLaw law = law_multiplicities(star, m);
    for (int t = 0; t <= opts.r_max; ++t) fm[t] = law.factorial_moment_ml(*l, t);
  } else {
    const ExactLaw law = law_kn(star, m);
    for (int t = 0; t <= opts.r_max; ++t) fm[t] = law.factorial_moment(t);
  }

  // Monte Carlo through the compounding sampler, honoring the override knobs.
  const double a = opts.sampler_beta_a.value_or(ctx.beta_a());
  const double b = opts.sampler_beta_b.value_or(ctx.beta_b());
  std::vector<double> power_sum(opts.r_max + 1, 0.0), power_sq(opts.r_max + 1, 0.0);
  for (std::int64_t rep = 0; rep < opts.reps; ++rep) {
    const double eta = rng.beta(a, b);
    const std::int64_t star_draw =
        l ? sample_mln(star, m, *l, rng) : sample_kn(star, m, rng);
    const std::int64_t z = rng.binomial(star_draw, eta);
    double zp = 1.0;
    for (int r = 0; r <= opts.r_max; ++r) {
      power_sum[r] += zp;
      power_sq[r] += zp * zp;
      zp *= double(z);
    }
  }

  RepresentationReport report;
  for (int r = 0; r <= opts.r_max; ++r) {
    MomentCheckRow row;
    row.r = r;
    row.closed_form = l ? posterior_moment_m(ctx, m, *l, r) : posterior_moment_k(ctx, m, r);
    row.oracle = binomial_moment_from_factorial(fm, bm, r);
    const double mean = power_sum[r] / double(opts.reps);
    const double var =
        std::max(0.0, power_sq[r] / double(opts.reps) - mean * mean);
    row.mc = mean;
    row.mc_stderr = std::sqrt(var / double(opts.reps));
    const double scale = std::max({std::abs(row.closed_form), std::abs(row.oracle), 1e-12});
    row.flag_oracle = std::abs(row.closed_form - row.oracle) / scale > 1e-8;
    row.flag_mc = r > 0 && std::abs(row.mc - row.closed_form) > 4.0 * row.mc_stderr;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace ewp
