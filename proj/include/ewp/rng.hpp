#ifndef EWP_RNG_HPP
#define EWP_RNG_HPP

#include <cstdint>
#include <random>

namespace ewp {

// Seed-reproducible random stream. Streams are addressed by
// (master_seed, stream_index); identical pairs reproduce identical draws
// bit for bit, distinct pairs are decorrelated by a splitmix64 hash of the
// pair before seeding the engine. All distribution transforms are
// implemented here (not via <random> distributions) so sequences do not
// depend on the standard library's unspecified algorithms.
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_index = 0);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t raw() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform();
  // Uniform on (0,1); redraws the (probability 2^-53) exact zero.
  double uniform_pos();
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform integer in [0, n).
  std::uint64_t uniform_below(std::uint64_t n);

  double normal();
  // Marsaglia-Tsang for shape >= 1, boosted from shape+1 below 1.
  double gamma(double shape);
  double beta(double a, double b);
  // Sum of k Bernoulli(p) draws; exact for the k used in this project.
  std::int64_t binomial(std::int64_t k, double p);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

}  // namespace ewp

#endif
