// SPDX-License-Identifier: Apache-2.0
//
// dasrate: downlink rate analysis for co-located and distributed antenna layouts
// Copyright (C) 2026 The dasrate authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DASRATE_RANDOM_HPP
#define DASRATE_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace dasrate
{

// Purpose tags mixed into substream keys so that e.g. user positions and fading draws of the
// same realization never share a generator.
enum class StreamPurpose : std::uint64_t
{
    users = 1,
    antennas = 2,
    fading = 3,
    weights = 4,
    rate = 5,
};

// Deterministic random stream. Substreams are addressed by a key tuple, so the sequence a
// realization sees depends only on (master seed, key) and never on scheduling order.
class RandomStream
{
public:
    explicit RandomStream(std::uint64_t seed);

    // Stream for (master_seed, purpose, key...). Distinct keys give statistically independent streams.
    static RandomStream derive(std::uint64_t master_seed, StreamPurpose purpose,
                               std::initializer_list<std::uint64_t> key = {});

    double uniform();                      // [0, 1)
    double normal();                       // N(0, 1)
    std::complex<double> complex_normal(); // CN(0, 1): independent N(0, 1/2) parts

    std::mt19937_64 &engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// SplitMix64 finalizer, used for key mixing.
std::uint64_t mix64(std::uint64_t x) noexcept;

} // namespace dasrate

#endif
