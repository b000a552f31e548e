#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace xihom {

// Bad user input or a violated data invariant (CLI exit code 2).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation that is refused for this instance, with the reason spelled
// out (e.g. relative-class injective coresolutions on a non-self-injective
// algebra).
struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

// No syzygy inside the window admits a complete resolution.
struct NoGpWithinWindow : std::runtime_error {
  explicit NoGpWithinWindow(const std::string& msg) : std::runtime_error(msg) {}
};

// Solver failures that the theory says cannot happen; always a bug.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

inline void check(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

// FNV-1a over a stream of words; used to content-address algebras, modules
// and proper classes for the resolution memo table.
struct Fnv64 {
  uint64_t h = 1469598103934665603ull;
  void add(uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  void add_bytes(const void* data, size_t n) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  }
};

// SplitMix64: tiny deterministic generator. The standard <random>
// distributions are implementation-defined, so seeded runs would not be
// reproducible across platforms; plain modular draws from this engine are.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform draw in [0, n); n must be positive
  uint64_t below(uint64_t n) { return next() % n; }
};

inline Rng trial_rng(uint64_t seed, uint64_t trial) {
  Fnv64 f;
  f.add(seed);
  f.add(trial + 1);
  return Rng(f.h);
}

}  // namespace xihom
