#ifndef WSNSIM_RNG_HPP
#define WSNSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace wsnsim {

// Deterministic RNG built on std::mt19937_64 (bit-exact by the standard).
// The std::uniform_* distributions are implementation-defined, so the value
// mappings live here instead; simulations replay byte-identically across
// platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed)
      : engine_(splitmix64(seed)),
        seed_hash_(splitmix64(seed ^ 0xd6e8feb86659fd93ULL)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Modulo bias is ~n/2^64, irrelevant here.
  std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

  // Derives an independent child stream; used to decouple the draw order of
  // topology, traffic, routing and loss decisions.
  Rng derive(std::uint64_t stream) const {
    return Rng(seed_hash_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_hash_;
};

}  // namespace wsnsim

#endif  // WSNSIM_RNG_HPP
