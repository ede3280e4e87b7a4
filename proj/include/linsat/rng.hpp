#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace linsat {

// All randomness comes from std::mt19937_64, whose output sequence is fixed
// by the C++ standard. Independent substreams are keyed by mixing a master
// seed with a purpose tag and indices through the SplitMix64 finalizer.
// Bounded draws use rejection sampling so they are identical on every
// platform (std::uniform_int_distribution is implementation-defined).

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 64-bit FNV-1a, used to turn string keys (subcommand names) into tags.
inline constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Purpose tags for substream derivation.
enum class Stream : std::uint64_t {
  RowCoefficients = 1,
  RowAcceptance = 2,
  OpiPoints = 3,
  PlantedAssignment = 4,
  PlantedSelection = 5,
  PlantedRow = 6,
  RandomAssignment = 7,
  PrangeIteration = 8,
};

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = splitmix64(master);
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, Stream tag,
                                 std::uint64_t index = 0) {
  return derive_seed(master, {static_cast<std::uint64_t>(tag), index});
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace linsat
