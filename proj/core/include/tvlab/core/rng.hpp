#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tvlab/core/scalar.hpp"

namespace tvlab {

/// The single source of randomness. Engine: std::mt19937_64, whose output
/// sequence is fixed by the C++ standard. Distributions are implemented here
/// (std:: distributions differ between standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [lo, hi], by rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform_real();
  double normal();
  bool coin() { return (next() >> 63) != 0; }
  /// Uniform on the grid {lo + j / den} within [lo, hi].
  Rational uniform_rational(std::int64_t lo, std::int64_t hi, std::int64_t den);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed for an independent substream: splitmix64 of (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace tvlab
