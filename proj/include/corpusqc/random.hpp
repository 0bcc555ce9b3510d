// random.hpp
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
//
// Reproducible pseudo-randomness. Splits and test generators must yield
// identical results across runs and platforms, so everything here is
// fixed 64-bit arithmetic with pinned constants (no std::mt19937, whose
// distributions are not specified bit-exactly).

#ifndef CORPUSQC_RANDOM_HPP_
#define CORPUSQC_RANDOM_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

namespace corpusqc {

// Vigna's splitmix64. Full 64-bit state, equidistributed output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) via Lemire's multiply-shift rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    while (true) {
      std::uint64_t x = next();
      unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      std::uint64_t low = static_cast<std::uint64_t>(m);
      if (low >= bound) return static_cast<std::uint64_t>(m >> 64);
      std::uint64_t threshold = (0 - bound) % bound;
      if (low >= threshold) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Derives the per-corpus split seed from the user seed and the corpus
// name, so adding corpora to a run never disturbs existing splits.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view name) {
  SplitMix64 rng(seed ^ fnv1a64(name));
  return rng.next();
}

template <typename T>
void fisher_yates(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace corpusqc

#endif  // CORPUSQC_RANDOM_HPP_
