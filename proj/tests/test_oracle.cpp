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

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "oracle.hpp"
#include "rng.hpp"
#include "test_util.hpp"

using namespace beamdpd;
using testutil::make_signal;
using testutil::random_cn;

TEST_CASE("moment ratio")
{
    auto c = make_signal(std::vector<cd>(16, std::polar(1.7, 0.4)));
    CHECK(moment_ratio(c) == doctest::Approx(1.7 * 1.7));

    CHECK(moment_ratio(make_signal({{1, 0}, {2, 0}})) == doctest::Approx(257.0 / 65.0));

    // CN(0,1): E|x|^6 = 6, E|x|^8 = 24 -> ratio 4
    auto g = random_cn(1 << 20, 71);
    CHECK(moment_ratio(g) == doctest::Approx(4.0).epsilon(0.05));

    CHECK_THROWS_AS(moment_ratio(make_signal({})), Error);
    CHECK_THROWS_AS(moment_ratio(make_signal({{0, 0}, {0, 0}})), Error);
}

TEST_CASE("alpha3_opt closed form")
{
    SUBCASE("no cubic content means no correction")
    {
        ThirdOrderScenario scn;
        scn.f1 = {cd{1, 0}, cd{1.1, 0}};
        scn.f3 = {cd{0, 0}, cd{0, 0}};
        scn.e86 = 4.0;
        CHECK(std::abs(alpha3_opt(scn)) < 1e-15);
    }
    SUBCASE("plug-in arithmetic: f1=1, f3=-0.05, E86=4 gives 0.125")
    {
        ThirdOrderScenario scn;
        scn.f1 = {cd{1, 0}};
        scn.f3 = {cd{-0.05, 0}};
        scn.e86 = 4.0;
        CHECK(testutil::rel_err(alpha3_opt(scn), cd{0.125, 0}) < 1e-12);
    }
    SUBCASE("closed form satisfies its own fixed-point equation")
    {
        ThirdOrderScenario scn;
        scn.f1 = {cd{1, 0.1}, cd{0.9, -0.05}};
        scn.f3 = {cd{-0.03, 0.01}, cd{-0.05, -0.02}};
        scn.e86 = 3.7;
        cd f31 = (scn.f3[0] + scn.f3[1]) / (scn.f1[0] + scn.f1[1]);
        cd a = alpha3_opt(scn);
        cd resid = std::conj(a) + f31 * (1.0 + (a + 2.0 * std::conj(a)) * scn.e86);
        CHECK(std::abs(resid) <= std::abs(f31) * std::norm(a) * scn.e86 * 10.0 + 1e-12);
    }
}

// simulate the correlation |mean(|x|^2 x* e)| for a candidate coefficient,
// with a perfect linear-gain estimate (the analysis assumption)
static double corr_residual(cd alpha, cd f1, cd f3, const std::vector<cd> &x)
{
    cd acc{0, 0};
    for (const cd &v : x)
    {
        cd u = std::norm(v) * v;
        cd xt = v + std::conj(alpha) * u;
        cd z = f1 * xt + f3 * std::norm(xt) * xt;
        cd e = z - f1 * v;
        acc += std::conj(u) * e;
    }
    return std::abs(acc) / static_cast<double>(x.size());
}

TEST_CASE("alpha3_opt minimizes the decorrelation residual")
{
    // On a PAPR-limited waveform the dropped |x|^10 / |x|^12 terms are small
    // and the closed form sits within a percent of the true minimizer. (With
    // an unclipped Gaussian the heavy tails push the bias past 5%.)
    auto [x, grid] = generate_ofdm(testutil::small_ofdm(4, 72));
    ThirdOrderScenario scn;
    scn.f1 = {cd{1, 0}};
    scn.f3 = {cd{-0.008, 0.002}};
    scn.e86 = moment_ratio(x);
    cd a = alpha3_opt(scn);

    double r0 = corr_residual(a, scn.f1[0], scn.f3[0], x.samples);
    for (double scale : {0.95, 1.05})
    {
        CHECK(r0 < corr_residual(a * scale, scn.f1[0], scn.f3[0], x.samples));
        CHECK(r0 < corr_residual(a * std::polar(1.0, scale - 1.0), scn.f1[0], scn.f3[0],
                                 x.samples));
    }
}

TEST_CASE("mismatched closed form")
{
    SUBCASE("zero deviations reduce to the matched value")
    {
        ThirdOrderScenario scn;
        scn.f1 = {cd{1, 0}, cd{1.05, 0.02}};
        scn.f3 = {cd{-0.04, 0.01}, cd{-0.03, 0}};
        scn.deviations = {cd{0, 0}, cd{0, 0}};
        scn.e86 = 3.5;
        CHECK(testutil::rel_err(alpha3_opt_mismatched(scn), alpha3_opt(scn)) < 1e-14);
    }
    SUBCASE("single branch cancels any deviation")
    {
        ThirdOrderScenario scn;
        scn.f1 = {cd{1.2, -0.3}};
        scn.f3 = {cd{-0.05, 0.02}};
        scn.deviations = {cd{0.4, 0.25}};
        scn.e86 = 4.0;
        CHECK(testutil::rel_err(alpha3_opt_mismatched(scn), alpha3_opt(scn)) < 1e-14);
    }
    SUBCASE("M=16 deviation statistics stay small")
    {
        Rng rng(73);
        std::vector<double> devs;
        for (int t = 0; t < 50; t++)
        {
            ThirdOrderScenario scn;
            scn.e86 = 3.7;
            for (int m = 0; m < 16; m++)
            {
                scn.f1.push_back(cd{1, 0} * (1.0 + 0.1 * rng.cnormal()));
                scn.f3.push_back(cd{-0.02, 0.005} * (1.0 + 0.1 * rng.cnormal()));
                double beta = rng.uniform(-0.1, 0.1);
                double phi = rng.uniform(-10.0, 10.0) * M_PI / 180.0;
                scn.deviations.push_back((1.0 + beta) * std::polar(1.0, phi) - 1.0);
            }
            cd a0 = alpha3_opt(scn);
            cd am = alpha3_opt_mismatched(scn);
            devs.push_back(std::abs(am - a0) / std::abs(a0));
        }
        std::sort(devs.begin(), devs.end());
        CHECK(devs[devs.size() / 2] <= 0.05);
    }
}

TEST_CASE("scenario validation")
{
    ThirdOrderScenario scn;
    scn.f1 = {cd{1, 0}, cd{-1, 0}}; // sums to zero
    scn.f3 = {cd{0, 0}, cd{0, 0}};
    scn.e86 = 4.0;
    CHECK_THROWS_AS(alpha3_opt(scn), Error);

    scn = ThirdOrderScenario{};
    scn.f1 = {cd{1, 0}};
    scn.f3 = {cd{-0.05, 0}};
    scn.e86 = -1.0;
    CHECK_THROWS_AS(alpha3_opt(scn), Error);
}
