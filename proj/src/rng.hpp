// SPDX-License-Identifier: Apache-2.0
//
// beamdpd - baseband simulator for sub-array digital predistortion
// Copyright (C) 2026 the beamdpd developers
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

#ifndef BEAMDPD_RNG_HPP
#define BEAMDPD_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace beamdpd
{
    // Derive independent stream seeds from one master seed and a stream tag.
    // splitmix64 over (seed ^ fnv1a(tag)) keeps runs reproducible while the
    // streams stay decorrelated.
    inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag)
    {
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (char c : tag)
            h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
        std::uint64_t z = seed ^ h;
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Deterministic generator. Distribution code is hand-rolled because the
    // std:: distributions are not bit-reproducible across standard libraries;
    // the engine itself is.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : eng_(seed) {}

        // uniform in [0, 1)
        double uniform()
        {
            return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        }

        double uniform(double lo, double hi)
        {
            return lo + (hi - lo) * uniform();
        }

        std::uint64_t integer(std::uint64_t n) // [0, n), n > 0
        {
            // modulo bias is irrelevant for the small n used here, but the
            // rejection loop keeps draws exact anyway
            std::uint64_t limit =~std::uint64_t{0} - (~std::uint64_t{0} % n);
            std::uint64_t v;
            do
                v = eng_();
            while (v >= limit);
            return v % n;
        }

        // standard normal via Box-Muller (two uniforms per call, no cache)
        double normal()
        {
            double u1 = uniform();
            while (u1 <= 0.0)
                u1 = uniform();
            double u2 = uniform();
            return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        }

        // circular complex normal with E|z|^2 = 1
        std::complex<double> cnormal()
        {
            double u1 = uniform();
            while (u1 <= 0.0)
                u1 = uniform();
            double u2 = uniform();
            double r = std::sqrt(-std::log(u1));
            return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
        }

    private:
        std::mt19937_64 eng_;
    };
}

#endif
