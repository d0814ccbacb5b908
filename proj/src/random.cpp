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

#include "dasrate/random.hpp"

#include <array>
#include <cmath>

namespace dasrate
{

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed)
{
    // Expand the 64-bit seed so that neighbouring seeds do not produce correlated mt19937 states
    std::array<std::uint32_t, 8> words{};
    std::uint64_t s = seed;
    for (std::size_t i = 0; i < words.size(); i += 2)
    {
        s = mix64(s);
        words[i] = static_cast<std::uint32_t>(s);
        words[i + 1] = static_cast<std::uint32_t>(s >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

RandomStream RandomStream::derive(std::uint64_t master_seed, StreamPurpose purpose,
                                  std::initializer_list<std::uint64_t> key)
{
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ mix64(static_cast<std::uint64_t>(purpose)));
    std::uint64_t position = 0;
    for (std::uint64_t k : key)
        h = mix64(h ^ mix64(k + 0x632BE59BD9B4E019ULL * ++position));
    return RandomStream(h);
}

double RandomStream::uniform() { return uniform_(engine_); }

double RandomStream::normal() { return normal_(engine_); }

std::complex<double> RandomStream::complex_normal()
{
    static const double scale = std::sqrt(0.5);
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {scale * re, scale * im};
}

} // namespace dasrate
