#ifndef EWP_POSTERIOR_HPP
#define EWP_POSTERIOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ewp/exact.hpp"
#include "ewp/rng.hpp"
#include "ewp/sampler.hpp"

namespace ewp {

// Conditioning data (n, j) for the posterior diversities given K_n = j.
// Only (n, j) matters: the Binomial-Beta representation does not involve
// the block frequencies beyond their count.
struct PosteriorContext {
  ModelParams params;  // requires alpha > 0
  std::int64_t n = 0;
  std::int64_t j = 0;

  void validate() const;
  double beta_a() const { return params.theta / params.alpha + double(j); }
  double beta_b() const { return double(n) / params.alpha - double(j); }
  // K*_m and M*_{l,m} live under PD(alpha, theta + n).
  ModelParams star_params() const { return {params.alpha, params.theta + double(n)}; }
};

// Draw of the posterior diversity K~_m^(n) | K_n = j as
// Binomial(K*_m, eta) with eta ~ Beta(theta/alpha + j, n/alpha - j) drawn
// independently of the K*_m path.
std::int64_t sample_posterior_k(const PosteriorContext& ctx, std::int64_t m, RngStream& rng);

// Same draw with the ingredients exposed (for diagnostics on the
// independence structure).
struct PosteriorDraw {
  double eta = 0.0;
  std::int64_t star = 0;  // K*_m
  std::int64_t z = 0;     // Binomial(star, eta)
};
PosteriorDraw sample_posterior_k_draw(const PosteriorContext& ctx, std::int64_t m,
                                      RngStream& rng);

// Same compounding with M*_{l,m} in place of K*_m.
std::int64_t sample_posterior_m(const PosteriorContext& ctx, std::int64_t m, int l,
                                RngStream& rng);

// E[(K~_m^(n))^r | K_n = j] via the central-Stirling form
// sum_t S(r,t) E[B^t] E[(K*_m)_{t v 1}].
double posterior_moment_k(const PosteriorContext& ctx, std::int64_t m, int r);

// E[(M~_{l,m}^(n))^r | K_n = j], same chain with M*-moments.
double posterior_moment_m(const PosteriorContext& ctx, std::int64_t m, int l, int r);

struct MomentCheckRow {
  int r = 0;
  double closed_form = 0.0;
  double oracle = 0.0;
  double mc = 0.0;
  double mc_stderr = 0.0;
  bool flag_oracle = false;  // |closed - oracle| beyond 1e-8 relative
  bool flag_mc = false;      // |mc - closed| beyond 4 standard errors
};

struct RepresentationReport {
  std::vector<MomentCheckRow> rows;
  bool flagged() const;
};

struct VerifyOptions {
  int r_max = 5;
  std::int64_t reps = 100000;
  // Fault-injection knobs: override the Beta parameters used by the
  // Monte Carlo sampling route only, so a corrupted parameter shows up as
  // a closed-form vs Monte Carlo separation.
  std::optional<double> sampler_beta_a;
  std::optional<double> sampler_beta_b;
};

// Three-way moment comparison per r = 0..r_max: closed form, exact oracle
// (DP law of K*_m for K mode, enumeration law of M*_{l,m} for M mode,
// compounded through the Binomial and Beta moments), and Monte Carlo.
// K mode when l is nullopt. DP mode allows m <= 200; enumeration m <= 12.
RepresentationReport verify_representation(const PosteriorContext& ctx, std::int64_t m,
                                           std::optional<int> l, const VerifyOptions& opts,
                                           RngStream& rng);

}  // namespace ewp

#endif
