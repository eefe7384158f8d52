#ifndef EWP_SAMPLER_HPP
#define EWP_SAMPLER_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ewp/rng.hpp"

namespace ewp {

// The pair (alpha, theta) of the two-parameter Poisson-Dirichlet model,
// alpha in [0,1) and theta > -alpha.
struct ModelParams {
  double alpha = 0.0;
  double theta = 1.0;

  void validate() const;
  // Moderate-deviation operations additionally need alpha > 0.
  void validate_positive_alpha() const;
};

// Multiset of block sizes kept as a multiplicity histogram:
// multiplicity()[l] = M_{l,n} = number of blocks of size l.
// Invariants: sum_l l * M_l = n and num_blocks() = sum_l M_l.
class PartitionState {
 public:
  PartitionState() = default;

  std::int64_t n() const { return n_; }
  std::int64_t num_blocks() const { return k_; }
  std::int64_t multiplicity(std::int64_t block_size) const;
  const std::map<std::int64_t, std::int64_t>& histogram() const { return mult_; }

  void add_block();                       // open a new block of size 1
  void grow_block(std::int64_t size);     // move one block from size to size+1

  // Throws ValidationError if the histogram identities are broken.
  void check_invariants() const;

 private:
  std::map<std::int64_t, std::int64_t> mult_;
  std::int64_t n_ = 0;
  std::int64_t k_ = 0;
};

// GEM stick-breaking weights V_1..V_T plus the unbroken residual mass,
// sticks sum + residual == 1 up to rounding.
struct StickWeights {
  std::vector<double> sticks;
  double residual = 1.0;
};

// V_k = (1-U_1)...(1-U_{k-1}) U_k with U_k ~ Beta(1-alpha, theta + k*alpha).
StickWeights sample_gem(const ModelParams& params, int truncation, RngStream& rng);

// One step of the sequential predictive rule: a new block with probability
// (theta + K*alpha)/(theta + n), otherwise an existing block of size s with
// probability proportional to (s - alpha) * M_s.
PartitionState crp_extend(PartitionState state, const ModelParams& params, RngStream& rng);

struct PathPoint {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::vector<std::int64_t> m;  // m[l-1] = M_{l,n} for l = 1..track_l_max
};

// One trajectory of the predictive rule recorded at each checkpoint.
// Equivalent in law to iterating crp_extend; internally uses a per-block
// representation with rejection so a step costs O(1) amortized.
std::vector<PathPoint> sample_path(const ModelParams& params,
                                   std::span<const std::int64_t> checkpoints,
                                   int track_l_max, RngStream& rng);

// K_n at alpha = 0: sum of independent Bernoulli(theta/(theta+i-1)), i = 1..n.
std::int64_t bernoulli_kn_alpha0(double theta, std::int64_t n, RngStream& rng);

// K_n via its marginal chain: K grows at step i with probability
// (theta + alpha*K)/(theta + i). Same law as the path sampler's K.
std::int64_t sample_kn(const ModelParams& params, std::int64_t n, RngStream& rng);

// M_{l,n} via the size-truncated histogram chain (tracks counts of sizes
// 1..l only, which is closed under the predictive rule).
std::int64_t sample_mln(const ModelParams& params, std::int64_t n, int l, RngStream& rng);

}  // namespace ewp

#endif
