// Copyright 2026 The vqaprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VQAPROBE_RANDOM_H_
#define VQAPROBE_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "vqaprobe/common.h"

namespace vqaprobe {

inline uint64_t Fnv1a64(std::string_view text) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded random source. Only the raw 64-bit engine output is used and every
// derived quantity is computed here, so streams are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(SplitMix64(seed)) {}

  // Independent substream keyed by a global seed and a list of labels, e.g.
  // {"visual", "Q2", image_id}.
  static Rng Derive(uint64_t seed, std::initializer_list<std::string_view> labels) {
    uint64_t state = SplitMix64(seed);
    for (std::string_view label : labels) {
      state = SplitMix64(state ^ Fnv1a64(label));
    }
    return Rng(state);
  }

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  size_t Uniform(size_t n) {
    if (n == 0) throw Error("Rng::Uniform on empty range");
    const uint64_t bound = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return static_cast<size_t>(draw % bound);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double UniformReal() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return UniformReal() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Uniform(i)]);
    }
  }

  template <typename Container>
  const auto& Pick(const Container& items) {
    return items[Uniform(items.size())];
  }

  // Index drawn proportionally to non-negative weights. Returns weights.size()
  // when the total weight is zero.
  size_t Weighted(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) return weights.size();
    const double target = UniformReal() * total;
    double acc = 0.0;
    size_t last_positive = weights.size();
    for (size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      acc += weights[i];
      last_positive = i;
      if (target < acc) return i;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vqaprobe

#endif  // VQAPROBE_RANDOM_H_
