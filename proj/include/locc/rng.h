// Copyright 2026 The locc-detect Authors
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

#ifndef LOCC_RNG_H
#define LOCC_RNG_H

#include <cmath>
#include <cstdint>
#include <numbers>

namespace locc {

/// SplitMix64. Small state, so a fresh generator per (seed, stream) is cheap;
/// that is how shot batches and corpus members get independent reproducible streams.
/// Uniform and normal variates are derived here rather than through <random>
/// distributions so sequences are identical across standard libraries.
class SplitMix64 {
   public:
    static constexpr const char *kAlgorithm = "splitmix64";

    explicit SplitMix64(uint64_t seed) : state_(seed) {
    }

    /// Generator for sub-stream `stream` of root seed `seed`.
    static SplitMix64 stream(uint64_t seed, uint64_t stream) {
        SplitMix64 a(seed);
        uint64_t s = a.next() ^ mix(stream + 0x632be59bd9b4e019ULL);
        return SplitMix64(s);
    }

    uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1].
    double uniform_open_closed() {
        return 1.0 - uniform();
    }

    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

    double normal() {
        double u1 = uniform_open_closed();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

   private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

}  // namespace locc

#endif
