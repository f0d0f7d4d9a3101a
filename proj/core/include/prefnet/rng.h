// Copyright 2026 The prefnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PREFNET_RNG_H_
#define PREFNET_RNG_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace prefnet {

// SplitMix64 finaliser; a bijective 64-bit mixer.
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives the seed of an independent stream from a root seed and a path of
// indices, e.g. (seed, network, hashtag, repetition). Distinct paths give
// unrelated seeds; the same path always gives the same seed.
constexpr std::uint64_t DeriveSeed(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = Mix64(seed);
  for (std::uint64_t step : path) state = Mix64(state ^ Mix64(step + 1));
  return state;
}

// Seeded random source used by every stochastic routine in the library.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : engine_(Mix64(seed)) {}

  static Rng Stream(std::uint64_t seed,
                    std::initializer_list<std::uint64_t> path) {
    return Rng(DeriveSeed(seed, path));
  }

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0, ..., n - 1}; n must be positive.
  std::size_t Index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  // stddev == 0 returns mean without consuming randomness.
  double Normal(double mean, double stddev) {
    if (stddev == 0.0) return mean;
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace prefnet

#endif  // PREFNET_RNG_H_
