#ifndef THINTREE_UTIL_HPP
#define THINTREE_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace thintree {

// Contract failures carry the error name used by the CLI exit paths
// (EmptySide, TooLarge, Disconnected, ...).
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& msg)
      : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& msg) {
  throw Error(name, msg);
}

// Deterministic RNG for all seeded randomness (generators, local search,
// tests). splitmix64 core; identical streams on every platform, unlike the
// standard distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, bound)
  uint64_t below(uint64_t bound) {
    if (bound == 0) return 0;
    uint64_t threshold = (~bound + 1) % bound;  // 2^64 mod bound
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  int intIn(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // symmetric around 0, rough gaussian via sum of uniforms (deterministic)
  double gauss() {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += real01();
    return s - 6.0;
  }

 private:
  uint64_t state_;
};

// FNV-1a 64-bit, used for input digests in CLI reports.
inline uint64_t fnv1a(const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline constexpr const char* kVersion = "0.1.0";

}  // namespace thintree

#endif
