// Copyright 2026 The mpb Authors. All rights reserved.
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

#ifndef MPB_RANDOM_H_
#define MPB_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace mpb {

// The standard distributions are implementation-defined, so sampling goes
// through the helpers below to keep traces identical across toolchains.
using PrivateEngine = std::mt19937_64;

inline std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b) {
  return Mix64(Mix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

// Counter-friendly generator: cheap to construct, so one can be derived per
// (seed, timestep) without any shared mutable state.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Uniform on [0, 1) with 53 random bits.
template <class Engine>
double UniformDouble(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

template <class Engine>
double UniformDouble(Engine& engine, double lo, double hi) {
  return lo + (hi - lo) * UniformDouble(engine);
}

template <class Engine>
int Bernoulli(Engine& engine, double p) {
  return UniformDouble(engine) < p ? 1 : 0;
}

// Unbiased integer in [0, n) (Lemire's multiply-and-reject).
template <class Engine>
std::uint64_t UniformBelow(Engine& engine, std::uint64_t n) {
  unsigned __int128 product =
      static_cast<unsigned __int128>(engine()) * n;
  auto low = static_cast<std::uint64_t>(product);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(engine()) * n;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

template <class T, class Engine>
void Shuffle(std::span<T> values, Engine& engine) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = UniformBelow(engine, i);
    using std::swap;
    swap(values[i - 1], values[j]);
  }
}

}  // namespace mpb

#endif  // MPB_RANDOM_H_
