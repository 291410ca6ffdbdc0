#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <vector>

namespace diffsample {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Collapses (master seed, salt tuple) into one stream seed. Distinct salt
// tuples give independent, reproducible substreams.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> salts) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t s : salts) h = mix64(h ^ s);
  return h;
}

// mt19937_64 wrapper with explicitly-coded draw helpers so that results are
// identical across standard libraries (distribution classes are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform_double() < p; }

  // Geometric count on {0, 1, 2, ...} with P(k) = (1 - q) q^k, mean q/(1-q).
  std::uint64_t geometric(double q) {
    if (q <= 0.0) return 0;
    if (q >= 1.0) throw std::invalid_argument("Rng::geometric: ratio must be < 1");
    double u = uniform_double();
    double v = std::floor(std::log1p(-u) / std::log(q));
    if (v >= 9.0e18) return static_cast<std::uint64_t>(9.0e18);
    return static_cast<std::uint64_t>(v);
  }

  template <class T>
  const T& pick(const std::vector<T>& values) {
    return values[static_cast<std::size_t>(below(values.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace diffsample
