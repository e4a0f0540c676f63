#ifndef HTLPP_RNG_HPP_
#define HTLPP_RNG_HPP_

#include <cstdint>
#include <limits>
#include <random>

namespace htlpp {

// Seeded random source. Wraps a 64-bit Mersenne twister; uniforms are built
// from raw engine bits so that inversion sampling never sees 0 or 1.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exponential with mean 1, by inversion.
  double exponential();
  double normal();
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

// Stateless 64-bit mixer (splitmix64 finalizer). Used for keyed, order-free
// draws where a node of a recursion owns its own randomness.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Maps a 64-bit key to (0, 1).
constexpr double key_to_unit(std::uint64_t key) {
  return (static_cast<double>(key >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace htlpp

#endif  // HTLPP_RNG_HPP_
