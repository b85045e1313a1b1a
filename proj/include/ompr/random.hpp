#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace ompr {

// What a random stream is used for. Part of every derived stream key so that
// two purposes never share draws.
enum class Purpose : std::uint64_t {
  kPlacement = 1,
  kMobility = 2,
  kDiscoveryLinks = 3,
  kFloodLinks = 4,
  kRetransmit = 5,
  kTestInstances = 6,
};

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 generator. Cheap to construct, which matters because the
// simulator builds one stream per (loop, node) and per (loop, source, node).
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit constexpr RandomStream(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform double in [0, 1) built from the top 53 bits. Independent of the
  // standard library's distribution implementation, so output is portable.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Hierarchical key identifying an independent stream, e.g.
// StreamKey(seed).with(Purpose::kMobility).with(loop).with(node).
class StreamKey {
 public:
  explicit constexpr StreamKey(std::uint64_t master_seed)
      : value_(mix64(master_seed ^ 0x6a09e667f3bcc908ULL)) {}

  [[nodiscard]] constexpr StreamKey with(std::uint64_t component) const {
    return StreamKey(Raw{mix64(value_ + mix64(component + 0x9e3779b97f4a7c15ULL))});
  }
  [[nodiscard]] constexpr StreamKey with(Purpose purpose) const {
    return with(static_cast<std::uint64_t>(purpose));
  }
  [[nodiscard]] constexpr StreamKey with(
      std::initializer_list<std::uint64_t> components) const {
    StreamKey key = *this;
    for (std::uint64_t c : components) key = key.with(c);
    return key;
  }

  [[nodiscard]] constexpr RandomStream stream() const { return RandomStream(value_); }
  [[nodiscard]] constexpr std::uint64_t value() const { return value_; }

  friend constexpr bool operator==(StreamKey, StreamKey) = default;

 private:
  struct Raw {
    std::uint64_t v;
  };
  explicit constexpr StreamKey(Raw raw) : value_(raw.v) {}

  std::uint64_t value_;
};

}  // namespace ompr
