#include "ewp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ewp/errors.hpp"

namespace ewp {

void ModelParams::validate() const {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw ValidationError("ModelParams: alpha must lie in [0,1)");
  if (!(theta > -alpha))
    throw ValidationError("ModelParams: theta must exceed -alpha");
}

void ModelParams::validate_positive_alpha() const {
  validate();
  if (!(alpha > 0.0))
    throw ValidationError("ModelParams: this operation requires alpha > 0");
}

std::int64_t PartitionState::multiplicity(std::int64_t block_size) const {
  auto it = mult_.find(block_size);
  return it == mult_.end() ? 0 : it->second;
}

void PartitionState::add_block() {
  ++mult_[1];
  ++k_;
  ++n_;
}

void PartitionState::grow_block(std::int64_t size) {
  auto it = mult_.find(size);
  if (it == mult_.end() || it->second <= 0)
    throw ValidationError("PartitionState: no block of size " + std::to_string(size));
  if (--it->second == 0) mult_.erase(it);
  ++mult_[size + 1];
  ++n_;
}

void PartitionState::check_invariants() const {
  std::int64_t mass = 0, blocks = 0;
  for (const auto& [size, count] : mult_) {
    if (size < 1 || count < 0) throw ValidationError("PartitionState: negative entry");
    mass += size * count;
    blocks += count;
  }
  if (mass != n_ || blocks != k_)
    throw ValidationError("PartitionState: histogram does not add up");
  if ((n_ == 0) != (k_ == 0))
    throw ValidationError("PartitionState: K_n = 0 iff n = 0 violated");
}

StickWeights sample_gem(const ModelParams& params, int truncation, RngStream& rng) {
  params.validate();
  if (truncation < 1) throw ValidationError("sample_gem: truncation must be >= 1");
  StickWeights out;
  out.sticks.reserve(truncation);
  double remaining = 1.0;
  for (int k = 1; k <= truncation; ++k) {
    const double u = rng.beta(1.0 - params.alpha, params.theta + k * params.alpha);
    out.sticks.push_back(remaining * u);
    remaining *= 1.0 - u;
  }
  out.residual = remaining;
  return out;
}

PartitionState crp_extend(PartitionState state, const ModelParams& params, RngStream& rng) {
  params.validate();
  const double total = params.theta + double(state.n());
  const double w_new = params.theta + double(state.num_blocks()) * params.alpha;
  if (state.n() == 0) {
    state.add_block();
    return state;
  }
  double u = rng.uniform() * total;
  if (u < w_new) {
    state.add_block();
    return state;
  }
  u -= w_new;
  // Weighted walk over the distinct sizes; total join weight is n - alpha*K.
  for (const auto& [size, count] : state.histogram()) {
    const double w = (double(size) - params.alpha) * double(count);
    if (u < w) {
      state.grow_block(size);
      return state;
    }
    u -= w;
  }
  // Rounding pushed u past the last cell; join the largest size.
  state.grow_block(state.histogram().rbegin()->first);
  return state;
}

std::vector<PathPoint> sample_path(const ModelParams& params,
                                   std::span<const std::int64_t> checkpoints,
                                   int track_l_max, RngStream& rng) {
  params.validate();
  if (checkpoints.empty()) throw ValidationError("sample_path: checkpoints must be nonempty");
  if (track_l_max < 1) throw ValidationError("sample_path: track_l_max must be >= 1");
  for (size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || (i > 0 && checkpoints[i] <= checkpoints[i - 1]))
      throw ValidationError("sample_path: checkpoints must be increasing and >= 1");
  }

  const std::int64_t n_max = checkpoints.back();
  // Per-block sizes plus an element -> block map. A join proposal picks a
  // uniform element (size-biased block) and accepts with (s - alpha)/s,
  // which yields weight (s - alpha) * M_s overall.
  std::vector<std::int64_t> block_size;
  std::vector<std::int32_t> element_block;
  block_size.reserve(1 + std::int64_t(2.5 * std::pow(double(n_max), 0.8)));
  element_block.reserve(n_max);

  std::vector<PathPoint> out;
  out.reserve(checkpoints.size());
  size_t next_cp = 0;

  for (std::int64_t n = 0; n < n_max; ++n) {
    bool open_new;
    if (n == 0) {
      open_new = true;
    } else {
      const double w_new = params.theta + double(block_size.size()) * params.alpha;
      open_new = rng.uniform() * (params.theta + double(n)) < w_new;
    }
    if (open_new) {
      block_size.push_back(1);
      element_block.push_back(std::int32_t(block_size.size() - 1));
    } else {
      for (;;) {
        const std::int32_t b = element_block[rng.uniform_below(std::uint64_t(n))];
        const double s = double(block_size[b]);
        if (rng.uniform() * s < s - params.alpha) {
          ++block_size[b];
          element_block.push_back(b);
          break;
        }
      }
    }
    if (n + 1 == checkpoints[next_cp]) {
      PathPoint pt;
      pt.n = n + 1;
      pt.k = std::int64_t(block_size.size());
      pt.m.assign(track_l_max, 0);
      for (std::int64_t s : block_size)
        if (s <= track_l_max) ++pt.m[s - 1];
      out.push_back(std::move(pt));
      ++next_cp;
    }
  }
  return out;
}

std::int64_t bernoulli_kn_alpha0(double theta, std::int64_t n, RngStream& rng) {
  if (!(theta > 0.0)) throw ValidationError("bernoulli_kn_alpha0: theta must be positive");
  if (n < 1) throw ValidationError("bernoulli_kn_alpha0: n must be >= 1");
  std::int64_t k = 0;
  for (std::int64_t i = 1; i <= n; ++i)
    k += rng.uniform() * (theta + double(i - 1)) < theta;
  return k;
}

std::int64_t sample_kn(const ModelParams& params, std::int64_t n, RngStream& rng) {
  params.validate();
  if (n < 0) throw ValidationError("sample_kn: n must be >= 0");
  if (n == 0) return 0;
  std::int64_t k = 1;
  for (std::int64_t i = 1; i < n; ++i)
    k += rng.uniform() * (params.theta + double(i)) < params.theta + params.alpha * double(k);
  return k;
}

std::int64_t sample_mln(const ModelParams& params, std::int64_t n, int l, RngStream& rng) {
  params.validate();
  if (n < 0) throw ValidationError("sample_mln: n must be >= 0");
  if (l < 1) throw ValidationError("sample_mln: l must be >= 1");
  if (n == 0) return 0;
  // Counts of block sizes 1..l; transitions touching larger sizes do not
  // change these, so the truncated state is Markov.
  std::vector<std::int64_t> m(l, 0);
  std::int64_t k = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double total = params.theta + double(i);
    const double w_new = params.theta + params.alpha * double(k);
    double u = (i == 0) ? -1.0 : rng.uniform() * total - w_new;
    if (u < 0.0) {
      ++m[0];
      ++k;
      continue;
    }
    int grown = 0;  // 0 = some block larger than l grew
    for (int s = 1; s <= l; ++s) {
      const double w = (double(s) - params.alpha) * double(m[s - 1]);
      if (u < w) {
        grown = s;
        break;
      }
      u -= w;
    }
    if (grown >= 1) {
      --m[grown - 1];
      if (grown < l) ++m[grown];
    }
  }
  return m[l - 1];
}

}  // namespace ewp
