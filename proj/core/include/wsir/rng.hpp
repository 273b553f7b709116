#ifndef WSIR_RNG_HPP
#define WSIR_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace wsir {

// Stream tags for deriving independent per-replicate seeds from one
// master seed. Adding a new tag never perturbs existing streams.
enum class Stream : std::uint64_t {
  Graph = 1,
  Weights = 2,
  Init = 3,
  Events = 4,
  Beta = 5,
  Samples = 6,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// seed(master, replicate, stream[, variant]) — splittable counter scheme.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate,
                                 Stream stream, std::uint64_t variant = 0) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (replicate * 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  h = splitmix64(h ^ variant);
  return h;
}

// mt19937_64 with hand-rolled variate transforms so output is
// well-defined (std distributions are implementation-specific).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform on [0,1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // uniform on [0,1] excluding exactly 0
  double uniform_pos() {
    double u;
    do { u = uniform(); } while (u == 0.0);
    return u;
  }

  double exponential(double rate) {
    return -std::log(uniform_pos()) / rate;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // uniform on {0, .., n-1}, n >= 1
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace wsir

#endif
