#include "ewp/rng.hpp"

#include <cmath>

#include "ewp/errors.hpp"

namespace ewp {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_pair(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= index * 0xda942042e4dd58b5ULL;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(mix_pair(master_seed, stream_index)) {}

double RngStream::uniform() {
  return double(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
  double u;
  do {
    u = uniform();
  } while (u == 0.0);
  return u;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw ValidationError("uniform_below: n must be positive");
  // Rejection to kill modulo bias.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double RngStream::normal() {
  // Box-Muller; one value per call keeps the stream stateless.
  const double u1 = uniform_pos();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw ValidationError("gamma: shape must be positive");
  if (shape < 1.0) {
    // Johnk boost: G(a) = G(a+1) * U^{1/a}.
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_pos(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RngStream::beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("beta: parameters must be positive");
  const double x = gamma(a);
  const double y = gamma(b);
  double r = x / (x + y);
  // Clamp away from the closed endpoints so downstream logs stay finite.
  if (r <= 0.0) r = 1e-300;
  if (r >= 1.0) r = 1.0 - 1e-16;
  return r;
}

std::int64_t RngStream::binomial(std::int64_t k, double p) {
  if (k < 0) throw ValidationError("binomial: k must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("binomial: p must lie in [0,1]");
  if (p == 0.0 || k == 0) return 0;
  if (p == 1.0) return k;
  std::int64_t s = 0;
  for (std::int64_t i = 0; i < k; ++i) s += uniform() < p;
  return s;
}

}  // namespace ewp
