//
// Copyright 2026 The Bodega Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef BODEGA_RANDOM_H_
#define BODEGA_RANDOM_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace bodega {

// Seeded generator whose derived draws (bounded integers, reals, shuffles)
// are identical across standard library implementations. The std::
// distributions are implementation-defined, so they are not used here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform in [0, n); n must be positive.
  uint64_t Uniform(uint64_t n);

  // Uniform in [0, 1) with 53 bits of precision.
  double UniformReal();

  bool Bernoulli(double p) { return UniformReal() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Uniform(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Independent stream for one work item; `stream` is typically a hash of the
// item's identifier.
uint64_t StreamSeed(uint64_t seed, uint64_t stream);

}  // namespace bodega

#endif  // BODEGA_RANDOM_H_
