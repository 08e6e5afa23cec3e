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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "test_util.hpp"

using namespace beamdpd;
using testutil::make_signal;
using testutil::random_cn;

namespace
{
    Psd brickwall_psd(double width_hz, double fs = 120e6, int bins = 4096)
    {
        Psd psd;
        psd.bin_hz = fs / bins;
        for (int k = 0; k < bins; k++)
        {
            double f = -fs / 2 + psd.bin_hz * (k + 1);
            psd.freq_hz.push_back(f);
            psd.density.push_back(std::abs(f) <= width_hz / 2 ? 1.0 : 0.0);
        }
        return psd;
    }
}

TEST_CASE("occupied bandwidth")
{
    SUBCASE("brickwall of width W returns W within a bin")
    {
        Psd psd = brickwall_psd(18e6);
        auto [lo, hi] = occupied_bandwidth(psd, 0.99);
        CHECK(hi - lo == doctest::Approx(0.99 * 18e6).epsilon(0.01));
        auto [lo2, hi2] = occupied_bandwidth(psd, 0.9999999);
        CHECK(hi2 - lo2 == doctest::Approx(18e6).epsilon(0.01));
    }
    SUBCASE("fraction 1 spans the support of the PSD")
    {
        Psd psd = brickwall_psd(18e6);
        auto [lo, hi] = occupied_bandwidth(psd, 1.0);
        CHECK(hi - lo >= 18e6 - 2 * psd.bin_hz);
    }
    SUBCASE("degenerate PSD rejected")
    {
        Psd psd = brickwall_psd(18e6);
        std::fill(psd.density.begin(), psd.density.end(), 0.0);
        CHECK_THROWS_AS(occupied_bandwidth(psd, 0.99), Error);
    }
    SUBCASE("measured occupied bandwidth of the default no-reduction signal")
    {
        // 1200 x 15 kHz = 18 MHz active band; the 99% band sits just inside
        auto [sig, grid] = generate_ofdm(testutil::small_ofdm(4, 81));
        Psd psd = psd_welch(sig, 4096, 0.5, Window::blackman_harris4);
        auto [lo, hi] = occupied_bandwidth(psd, 0.99);
        CHECK(hi - lo > 17.5e6);
        CHECK(hi - lo < 18.3e6);
    }
}

TEST_CASE("channel definitions")
{
    ChannelDef ch = make_channel(0.0, 20e6);
    CHECK_NOTHROW(ch.validate(120e6));
    CHECK(ch.adjacent_lower_hi == ch.wanted_lo);
    CHECK(ch.adjacent_upper_lo == ch.wanted_hi);

    // occupied band narrower than the allocation expands to the allocation
    Psd psd = brickwall_psd(18e6);
    ChannelDef c2 = channel_from_psd(psd, 20e6);
    CHECK(c2.measurement_bandwidth_hz == doctest::Approx(20e6));

    ChannelDef bad = make_channel(50e6, 20e6); // upper adjacent beyond Nyquist
    CHECK_THROWS_AS(bad.validate(120e6), Error);
}

TEST_CASE("aclr")
{
    SUBCASE("synthetic PSD with exactly 1/1000 adjacent power")
    {
        // 25 kHz grid puts the band edges exactly on grid points, so the
        // wanted and adjacent integrals count equal numbers of bins
        Psd psd = brickwall_psd(20e6, 120e6, 4800);
        for (std::size_t k = 0; k < psd.freq_hz.size(); k++)
        {
            double f = psd.freq_hz[k];
            psd.density[k] = 0.0;
            if (f >= -10e6 && f < 10e6)
                psd.density[k] = 1.0;
            else if ((f >= -30e6 && f < -10e6) || (f >= 10e6 && f < 30e6))
                psd.density[k] = 1.0e-3;
        }
        auto [lo, hi] = aclr_from_psd(psd, make_channel(0.0, 20e6));
        CHECK(lo == doctest::Approx(30.0).epsilon(1e-6));
        CHECK(hi == doctest::Approx(30.0).epsilon(1e-6));
    }
    SUBCASE("spectrally symmetric signal has matched sides")
    {
        auto sig = random_cn(1 << 16, 82);
        auto [lo, hi] = aclr(sig, make_channel(0.0, 20e6), Window::hann);
        CHECK(std::abs(lo - hi) < 0.2);
    }
    SUBCASE("adding an out-of-band tone moves the adjacent power by its power")
    {
        auto [sig, grid] = generate_ofdm(testutil::small_ofdm(4, 83));
        ChannelDef ch = make_channel(0.0, 20e6);
        Psd before = psd_welch(sig, 4096, 0.5, Window::blackman_harris4);
        double p_adj_before = integrate_band(before, ch.adjacent_upper_lo, ch.adjacent_upper_hi);

        const double tone_power = 1e-3;
        const double f0 = 20e6; // inside the upper adjacent channel
        auto with_tone = sig;
        for (std::size_t i = 0; i < with_tone.samples.size(); i++)
            with_tone.samples[i] +=
                std::sqrt(tone_power) *
                std::polar(1.0, 2.0 * M_PI * f0 * i / sig.sample_rate_hz);
        Psd after = psd_welch(with_tone, 4096, 0.5, Window::blackman_harris4);
        double p_adj_after = integrate_band(after, ch.adjacent_upper_lo, ch.adjacent_upper_hi);
        double delta_db = 10.0 * std::log10((p_adj_after - p_adj_before) / tone_power);
        CHECK(std::abs(delta_db) <= 0.1);
    }
}

TEST_CASE("evm")
{
    OfdmConfig cfg = testutil::small_ofdm(2, 84);
    cfg.papr_target_db = 0.0; // ideal remodulated reference: no clipping noise

    SUBCASE("ideal loopback is zero")
    {
        auto [sig, grid] = generate_ofdm(cfg);
        CHECK(evm_percent(grid, sig, cfg) < 1e-6);
        CHECK(evm_percent(grid, sig, cfg, EvmEqualizer::per_subcarrier) < 1e-6);
    }
    SUBCASE("orthogonal error with 1 percent power reads 10 percent")
    {
        auto [sig, grid] = generate_ofdm(cfg);
        // build an error grid orthogonal to the reference, 1% of its power
        Rng rng(85);
        SymbolGrid noisy = grid;
        std::vector<cd> err(grid.points.size());
        cd dot{0, 0};
        double pr = 0;
        for (std::size_t i = 0; i < err.size(); i++)
        {
            err[i] = rng.cnormal();
            dot += std::conj(grid.points[i]) * err[i];
            pr += std::norm(grid.points[i]);
        }
        for (std::size_t i = 0; i < err.size(); i++)
            err[i] -= (dot / pr) * grid.points[i]; // remove the ref component
        double pe = 0;
        for (const cd &v : err)
            pe += std::norm(v);
        double scale = std::sqrt(0.01 * pr / pe);
        for (std::size_t i = 0; i < err.size(); i++)
            noisy.points[i] += scale * err[i];

        ComplexSignal rx = modulate_grid(cfg, noisy);
        CHECK(evm_percent(grid, rx, cfg) == doctest::Approx(10.0).epsilon(0.01));
    }
    SUBCASE("scale invariance")
    {
        auto [sig, grid] = generate_ofdm(cfg);
        auto scaled = sig;
        for (cd &v : scaled.samples)
            v *= cd{0.37, -1.21};
        CHECK(evm_percent(grid, scaled, cfg) ==
              doctest::Approx(evm_percent(grid, sig, cfg)).epsilon(1e-9));
    }
    SUBCASE("shape mismatch is rejected")
    {
        auto [sig, grid] = generate_ofdm(cfg);
        OfdmConfig other = cfg;
        other.num_active_subcarriers = 600;
        CHECK_THROWS_AS(evm_percent(grid, sig, other), Error);
    }
}
