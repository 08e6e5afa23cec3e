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
#include "io.hpp"
#include "ofdm.hpp"
#include "signal.hpp"
#include "test_util.hpp"

using namespace beamdpd;
using testutil::make_signal;
using testutil::random_cn;

TEST_CASE("papr_db direct formula")
{
    CHECK(papr_db(make_signal({{1, 0}, {0, 0}})) == doctest::Approx(10.0 * std::log10(2.0)));
    CHECK(papr_db(make_signal({{1, 0}, {0, 1}, {-1, 0}})) == doctest::Approx(0.0));
    CHECK_THROWS_AS(papr_db(make_signal({})), Error);

    // cross-check against an independent two-pass max/mean evaluation
    auto sig = random_cn(4096, 3);
    double peak = 0, acc = 0;
    for (const cd &v : sig.samples)
    {
        peak = std::max(peak, std::norm(v));
        acc += std::norm(v);
    }
    double expect = 10.0 * std::log10(peak / (acc / sig.samples.size()));
    CHECK(papr_db(sig) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("single active subcarrier is constant modulus")
{
    OfdmConfig cfg;
    cfg.num_active_subcarriers = 1;
    cfg.num_symbols = 1;
    cfg.papr_target_db = 0.0;    // disabled
    cfg.wola_taper_samples = 0;  // no edge taper: pure complex exponential
    cfg.rng_seed = 5;
    auto [sig, grid] = generate_ofdm(cfg);
    CHECK(grid.subcarrier_indices == std::vector<int>{1});
    CHECK(papr_db(sig) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(mean_power(sig.samples) == doctest::Approx(1.0));
}

TEST_CASE("generate_ofdm is deterministic in the seed and distinct across seeds")
{
    auto cfg = testutil::small_ofdm(2, 42);
    auto [a, ga] = generate_ofdm(cfg);
    auto [b, gb] = generate_ofdm(cfg);
    REQUIRE(a.samples.size() == b.samples.size());
    CHECK(std::equal(a.samples.begin(), a.samples.end(), b.samples.begin()));
    CHECK(std::equal(ga.points.begin(), ga.points.end(), gb.points.begin()));

    cfg.rng_seed = 43;
    auto [c, gc] = generate_ofdm(cfg);
    CHECK_FALSE(std::equal(a.samples.begin(), a.samples.end(), c.samples.begin()));
}

TEST_CASE("unreduced OFDM PAPR sits in the 10-12 dB range")
{
    OfdmConfig cfg = testutil::small_ofdm(20, 8);
    cfg.papr_target_db = 0.0; // disable the reduction stage
    auto [sig, grid] = generate_ofdm(cfg);
    double p = papr_db(sig);
    CHECK(p > 10.0);
    CHECK(p < 12.0);
}

TEST_CASE("clipping and filtering reaches the configured target")
{
    OfdmConfig cfg = testutil::small_ofdm(20, 8); // paper numerology, default ICF
    auto [sig, grid] = generate_ofdm(cfg);
    CHECK(papr_db(sig) <= 8.5);
    CHECK(mean_power(sig.samples) == doctest::Approx(1.0));
}

TEST_CASE("reduce_papr passthrough cases")
{
    auto sig = random_cn(4096, 11, 120e6);
    SUBCASE("target above the input PAPR")
    {
        double target = papr_db(sig) + 1.0;
        auto out = reduce_papr_clip_filter(sig, -10e6, 10e6, target, 4);
        CHECK(std::equal(out.samples.begin(), out.samples.end(), sig.samples.begin()));
    }
    SUBCASE("constant-modulus input unchanged for any target")
    {
        std::vector<cd> tone(2048);
        for (std::size_t i = 0; i < tone.size(); i++)
            tone[i] = std::polar(1.0, 0.01 * i);
        auto t = make_signal(std::move(tone));
        auto out = reduce_papr_clip_filter(t, -10e6, 10e6, 0.5, 4);
        CHECK(std::equal(out.samples.begin(), out.samples.end(), t.samples.begin()));
    }
}

TEST_CASE("PAPR reduction is monotone across iterations")
{
    OfdmConfig cfg = testutil::small_ofdm(4, 21);
    cfg.papr_target_db = 0.0;
    auto [sig, grid] = generate_ofdm(cfg);
    std::vector<double> trace;
    reduce_papr_clip_filter(sig, -9e6, 9e6, 6.0, 8, &trace);
    REQUIRE(trace.size() >= 2);
    for (std::size_t k = 1; k < trace.size(); k++)
        CHECK(trace[k] <= trace[k - 1] + 0.1); // filtering regrowth allowance
}

TEST_CASE("welch PSD of a complex exponential")
{
    const double fs = 120e6;
    const double f0 = 12.3e6;
    std::vector<cd> v(32768);
    for (std::size_t i = 0; i < v.size(); i++)
        v[i] = std::polar(1.0, 2.0 * M_PI * f0 * i / fs);
    Psd psd = psd_welch(make_signal(std::move(v), fs), 4096, 0.5, Window::hann);

    std::size_t ipk = 0;
    for (std::size_t i = 1; i < psd.density.size(); i++)
        if (psd.density[i] > psd.density[ipk])
            ipk = i;
    CHECK(std::abs(psd.freq_hz[ipk] - f0) <= psd.bin_hz);

    std::vector<double> sorted = psd.density;
    std::sort(sorted.begin(), sorted.end());
    double median = sorted[sorted.size() / 2];
    CHECK(10.0 * std::log10(psd.density[ipk] / (median + 1e-300)) >= 40.0);
}

TEST_CASE("welch PSD integrates to the signal power")
{
    SUBCASE("white complex Gaussian")
    {
        auto sig = random_cn(1 << 16, 9);
        Psd psd = psd_welch(sig, 4096, 0.5, Window::hann);
        CHECK(total_power(psd) == doctest::Approx(1.0).epsilon(0.05));
    }
    SUBCASE("Parseval consistency on generated waveforms, both windows")
    {
        // long enough that per-symbol power variation averages out
        auto [sig, grid] = generate_ofdm(testutil::small_ofdm(12, 13));
        for (Window w : {Window::hann, Window::blackman_harris4})
        {
            Psd psd = psd_welch(sig, 4096, 0.5, w);
            CHECK(total_power(psd) ==
                  doctest::Approx(mean_power(sig.samples)).epsilon(0.01));
        }
    }
    SUBCASE("zero signal gives an all-zero PSD")
    {
        Psd psd = psd_welch(make_signal(std::vector<cd>(8192, cd{0, 0})), 4096);
        for (double v : psd.density)
            CHECK(v == 0.0);
    }
}

TEST_CASE("welch rejects nfft larger than the signal")
{
    CHECK_THROWS_AS(psd_welch(random_cn(100, 1), 4096), Error);
}

TEST_CASE("waveform export round-trips with a JSON sidecar")
{
    auto sig = random_cn(257, 17, 120e6);
    std::string path = "test_waveform_tmp.bin";
    write_waveform(path, sig, 17);
    auto back = read_waveform(path);
    REQUIRE(back.samples.size() == sig.samples.size());
    CHECK(back.sample_rate_hz == sig.sample_rate_hz);
    CHECK(std::equal(back.samples.begin(), back.samples.end(), sig.samples.begin()));
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}

TEST_CASE("ofdm config invariants are enforced")
{
    OfdmConfig cfg;
    cfg.num_active_subcarriers = 1400; // 21 MHz > 20 MHz occupied
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = OfdmConfig{};
    cfg.sample_rate_hz = 15e6; // below the occupied bandwidth
    CHECK_THROWS_AS(cfg.validate(), Error);
}
