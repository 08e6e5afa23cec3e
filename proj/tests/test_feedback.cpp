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
#include "feedback.hpp"
#include "rng.hpp"
#include "test_util.hpp"

using namespace beamdpd;
using testutil::make_signal;
using testutil::random_cn;

namespace
{
    SubArray random_sub(int m_count, std::uint64_t seed, double theta0 = 30.0)
    {
        Rng rng(seed);
        SubArray s;
        for (int m = 0; m < m_count; m++)
            s.models.push_back(
                third_order_memoryless(cd{1, 0} + 0.1 * rng.cnormal(), 0.05 * rng.cnormal()));
        s.weights = steering_weights(m_count, theta0);
        return s;
    }
}

TEST_CASE("zero mismatch reduces to the combined main beam")
{
    auto sub = random_sub(5, 11);
    auto x = random_cn(256, 12);
    FeedbackNetwork net;
    net.coupling_gc = cd{0.7, 0.2};
    auto z = observe(sub, net, x);
    auto y = combined_main_beam(sub, x);
    for (cd &v : y.samples)
        v *= net.coupling_gc;
    CHECK(testutil::max_rel_err(z.samples, y.samples) < 1e-10);
}

TEST_CASE("linear unit PAs give g_c M x")
{
    PHModel lin;
    lin.order_p = 1;
    lin.branch_filters[1] = {cd{1, 0}};
    SubArray sub;
    sub.models = {lin, lin, lin};
    sub.weights = steering_weights(3, -20.0);
    auto x = random_cn(64, 13);
    FeedbackNetwork net;
    net.coupling_gc = cd{2, 0};
    auto z = observe(sub, net, x);
    auto expect = x;
    for (cd &v : expect.samples)
        v *= cd{6, 0};
    CHECK(testutil::max_rel_err(z.samples, expect.samples) < 1e-10);
}

TEST_CASE("mismatched observation equals the hand-rolled weighted sum")
{
    auto sub = random_sub(2, 14);
    auto x = random_cn(16, 15);
    FeedbackNetwork net;
    net.deviations = {cd{0.1, 0}, cd{0, -0.05}};
    auto z = observe(sub, net, x);

    std::vector<cd> expect(x.samples.size(), cd{0, 0});
    for (int m = 0; m < 2; m++)
    {
        auto xm = x;
        for (cd &v : xm.samples)
            v *= sub.weights[m];
        auto ym = apply_ph(sub.models[m], xm);
        cd g = (1.0 + net.deviations[m]) * std::conj(sub.weights[m]);
        for (std::size_t i = 0; i < expect.size(); i++)
            expect[i] += g * ym.samples[i];
    }
    CHECK(testutil::max_rel_err(z.samples, expect) < 1e-12);
}

TEST_CASE("observation is linear in the deviations")
{
    auto sub = random_sub(4, 16);
    auto x = random_cn(128, 17);
    Rng rng(18);
    std::vector<cd> eps(4);
    for (cd &e : eps)
        e = 0.08 * rng.cnormal();

    FeedbackNetwork net0, net1, net2;
    net1.deviations = eps;
    net2.deviations = eps;
    for (cd &e : net2.deviations)
        e *= 2.0;

    auto z0 = observe(sub, net0, x);
    auto z1 = observe(sub, net1, x);
    auto z2 = observe(sub, net2, x);
    // the eps-weighted branch term obeys superposition exactly
    std::vector<cd> lhs(x.samples.size()), rhs(x.samples.size());
    for (std::size_t i = 0; i < lhs.size(); i++)
    {
        lhs[i] = z2.samples[i] - z0.samples[i];
        rhs[i] = 2.0 * (z1.samples[i] - z0.samples[i]);
    }
    CHECK(testutil::max_rel_err(lhs, rhs) < 1e-10);
}

TEST_CASE("anti-beamforming and weights-to-one modes agree without mismatch")
{
    auto sub = random_sub(6, 19);
    auto x = random_cn(200, 20);
    FeedbackNetwork a, b;
    b.mode = FeedbackMode::weights_to_one;
    auto za = observe(sub, a, x);
    auto zb = observe(sub, b, x);
    CHECK(testutil::max_rel_err(za.samples, zb.samples) < 1e-10);
}

TEST_CASE("sample_mismatch parameterization")
{
    SUBCASE("zero ranges give zero deviations")
    {
        MismatchConfig cfg;
        cfg.amplitude_range_pct[0] = cfg.amplitude_range_pct[1] = 0.0;
        cfg.phase_range_deg[0] = cfg.phase_range_deg[1] = 0.0;
        for (const cd &e : sample_mismatch(cfg, 8))
            CHECK(std::abs(e) < 1e-15);
    }
    SUBCASE("pure 10 percent amplitude gives eps = 0.1")
    {
        MismatchConfig cfg;
        cfg.amplitude_range_pct[0] = cfg.amplitude_range_pct[1] = 10.0;
        cfg.phase_range_deg[0] = cfg.phase_range_deg[1] = 0.0;
        for (const cd &e : sample_mismatch(cfg, 4))
            CHECK(testutil::rel_err(e, cd{0.1, 0}) < 1e-12);
    }
    SUBCASE("default ranges give mean magnitude near 0.10")
    {
        double acc = 0;
        int total = 0;
        for (std::uint64_t seed = 1; seed <= 50; seed++)
        {
            MismatchConfig cfg;
            cfg.rng_seed = seed;
            for (const cd &e : sample_mismatch(cfg, 16))
            {
                acc += std::abs(e);
                total++;
            }
        }
        double mean = acc / total;
        CHECK(mean > 0.06);
        CHECK(mean < 0.14);
    }
    SUBCASE("same seed is reproducible")
    {
        MismatchConfig cfg;
        cfg.rng_seed = 123;
        auto a = sample_mismatch(cfg, 16);
        auto b = sample_mismatch(cfg, 16);
        for (std::size_t i = 0; i < a.size(); i++)
            CHECK(a[i] == b[i]);
    }
}

TEST_CASE("deviation count mismatch is rejected")
{
    auto sub = random_sub(3, 21);
    FeedbackNetwork net;
    net.deviations = {cd{0, 0}, cd{0, 0}}; // 2 for a 3-element array
    CHECK_THROWS_AS(observe(sub, net, random_cn(16, 22)), Error);
}
