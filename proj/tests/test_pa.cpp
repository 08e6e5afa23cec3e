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
#include "pa.hpp"
#include "rng.hpp"
#include "test_util.hpp"

using namespace beamdpd;
using testutil::make_signal;
using testutil::random_cn;

// Naive double-loop evaluation of the defining PH sum; the reference the
// fast kernel must match.
static std::vector<cd> ph_oracle(const PHModel &m, const std::vector<cd> &x)
{
    std::vector<cd> y(x.size(), cd{0, 0});
    for (const auto &[p, taps] : m.branch_filters)
        for (std::size_t n = 0; n < x.size(); n++)
            for (int l = 0; l <= m.memory_n; l++)
            {
                if (n < static_cast<std::size_t>(l))
                    continue;
                cd xv = x[n - l];
                y[n] += taps[l] * std::pow(std::abs(xv), p - 1) * xv;
            }
    return y;
}

TEST_CASE("apply_ph identity and direct formulas")
{
    PHModel id;
    id.order_p = 1;
    id.branch_filters[1] = {cd{1, 0}};
    auto x = random_cn(64, 1);
    auto y = apply_ph(id, x);
    CHECK(testutil::max_rel_err(y.samples, x.samples) < 1e-15);

    // constant input through a linear+cubic model: 2 + |2|^2 2 = 10
    PHModel cub = third_order_memoryless(cd{1, 0}, cd{1, 0});
    auto c = make_signal(std::vector<cd>(8, cd{2, 0}));
    auto yc = apply_ph(cub, c);
    for (const cd &v : yc.samples)
        CHECK(testutil::rel_err(v, cd{10, 0}) < 1e-12);
}

TEST_CASE("apply_ph equals the double-loop oracle")
{
    SUBCASE("fixed 8-sample example, P=3 N=1")
    {
        PHModel m;
        m.order_p = 3;
        m.memory_n = 1;
        m.branch_filters[1] = {cd{1, 0}, cd{0.1, 0}};
        m.branch_filters[3] = {cd{-0.05, 0}, cd{0.01, 0}};
        auto x = random_cn(8, 2);
        auto y = apply_ph(m, x);
        CHECK(testutil::max_rel_err(y.samples, ph_oracle(m, x.samples)) < 1e-12);
    }
    SUBCASE("100 random small instances within 1e-10")
    {
        Rng rng(99);
        for (int t = 0; t < 100; t++)
        {
            PHModel m;
            m.order_p = 1 + 2 * static_cast<int>(rng.integer(6)); // 1..11
            m.memory_n = static_cast<int>(rng.integer(4));
            for (int p = 1; p <= m.order_p; p += 2)
            {
                std::vector<cd> taps(m.memory_n + 1);
                for (cd &c : taps)
                    c = 0.5 * rng.cnormal();
                m.branch_filters[p] = taps;
            }
            if (std::abs(m.branch_filters[1][0]) < 1e-3)
                m.branch_filters[1][0] = cd{1, 0};
            auto x = random_cn(1 + rng.integer(64), 1000 + t);
            auto y = apply_ph(m, x);
            CHECK(testutil::max_rel_err(y.samples, ph_oracle(m, x.samples)) < 1e-10);
        }
    }
}

TEST_CASE("odd-order models are phase covariant")
{
    PHModel m = default_base_model();
    auto x = random_cn(256, 5);
    for (double theta : {0.3, 1.2, -2.4})
    {
        cd r = std::polar(1.0, theta);
        auto xr = x;
        for (cd &v : xr.samples)
            v *= r;
        auto ya = apply_ph(m, xr);
        auto yb = apply_ph(m, x);
        for (cd &v : yb.samples)
            v *= r;
        CHECK(testutil::max_rel_err(ya.samples, yb.samples) < 1e-12);
    }
}

TEST_CASE("homogeneity holds only for the linear model")
{
    auto x = random_cn(128, 6);
    auto scaled = x;
    for (cd &v : scaled.samples)
        v *= 2.0;

    PHModel lin;
    lin.order_p = 1;
    lin.memory_n = 1;
    lin.branch_filters[1] = {cd{0.8, 0.1}, cd{0.05, 0}};
    auto y2 = apply_ph(lin, scaled);
    auto y1 = apply_ph(lin, x);
    for (cd &v : y1.samples)
        v *= 2.0;
    CHECK(testutil::max_rel_err(y2.samples, y1.samples) < 1e-12);

    PHModel nl = third_order_memoryless(cd{1, 0}, cd{0.1, 0});
    auto z2 = apply_ph(nl, scaled);
    auto z1 = apply_ph(nl, x);
    for (cd &v : z1.samples)
        v *= 2.0;
    CHECK(testutil::max_rel_err(z2.samples, z1.samples) > 1e-3);
}

TEST_CASE("third_order_memoryless constructor")
{
    PHModel lin = third_order_memoryless(cd{1, 0}, cd{0, 0});
    auto ones = make_signal(std::vector<cd>(4, cd{1, 0}));
    auto y = apply_ph(lin, ones);
    CHECK(testutil::rel_err(y.samples[0], cd{1, 0}) < 1e-12);

    PHModel m = third_order_memoryless(cd{1, 0}, cd{-0.05, 0});
    CHECK(testutil::rel_err(apply_ph(m, ones).samples[2], cd{0.95, 0}) < 1e-12);

    PHModel m2 = third_order_memoryless(cd{2, 0}, cd{0.1, 0.1});
    auto js = make_signal(std::vector<cd>(4, cd{0, 1}));
    CHECK(testutil::rel_err(apply_ph(m2, js).samples[1], cd{0, 2} + cd{0.1, 0.1} * cd{0, 1}) < 1e-12);

    CHECK_THROWS_AS(third_order_memoryless(cd{0, 0}, cd{0.1, 0}).validate(), Error);
}

TEST_CASE("model invariants")
{
    PHModel m = default_base_model();
    CHECK_NOTHROW(m.validate());
    m.branch_filters[4] = {cd{1, 0}, cd{0, 0}, cd{0, 0}, cd{0, 0}}; // even order
    CHECK_THROWS_AS(m.validate(), Error);
    m = default_base_model();
    m.branch_filters[3].pop_back(); // wrong tap count
    CHECK_THROWS_AS(m.validate(), Error);
}

TEST_CASE("population generation")
{
    SUBCASE("zero dispersion reproduces the base model")
    {
        PaPopulationConfig cfg;
        cfg.count = 4;
        cfg.dispersion_default = 0.0;
        auto pop = synth_population(cfg);
        for (const auto &m : pop)
            for (const auto &[p, taps] : m.branch_filters)
                for (std::size_t l = 0; l < taps.size(); l++)
                    CHECK(taps[l] == cfg.base_model.branch_filters.at(p)[l]);
    }
    SUBCASE("same seed gives identical populations")
    {
        PaPopulationConfig cfg;
        cfg.count = 6;
        cfg.rng_seed = 77;
        auto a = synth_population(cfg);
        auto b = synth_population(cfg);
        for (int m = 0; m < cfg.count; m++)
            CHECK(a[m].branch_filters.at(3)[0] == b[m].branch_filters.at(3)[0]);
    }
    SUBCASE("default population lands in the ACLR acceptance band")
    {
        auto [sig, grid] = generate_ofdm(testutil::small_ofdm(6, 4));
        ChannelDef nominal = make_channel(0.0, 20e6);
        PaAclrProbe probe = [&](const PHModel &m)
        { return aclr(apply_ph(m, sig), nominal); };
        PaPopulationConfig cfg;
        cfg.count = 4;
        cfg.rng_seed = 3;
        auto pop = synth_population(cfg, probe, {35.0, 45.0});
        for (const auto &m : pop)
        {
            auto [lo, hi] = probe(m);
            CHECK(lo >= 35.0);
            CHECK(lo <= 45.0);
            CHECK(hi >= 35.0);
            CHECK(hi <= 45.0);
        }
    }
    SUBCASE("impossible band exhausts the retry budget")
    {
        PaPopulationConfig cfg;
        cfg.count = 1;
        cfg.max_retries = 3;
        PaAclrProbe probe = [](const PHModel &) { return std::pair<double, double>{0.0, 0.0}; };
        CHECK_THROWS_AS(synth_population(cfg, probe, {35.0, 45.0}), Error);
    }
}

TEST_CASE("PA model JSON format round-trips with fixed field names")
{
    PHModel m = third_order_memoryless(cd{1, 0.5}, cd{-0.05, 0.01});
    nlohmann::json j = ph_model_to_json(m);
    CHECK(j.contains("order"));
    CHECK(j.contains("memory"));
    CHECK(j.contains("branches"));
    CHECK(j["branches"].contains("1"));
    CHECK(j["branches"].contains("3"));
    CHECK(j["branches"]["1"][0][0].get<double>() == doctest::Approx(1.0));
    CHECK(j["branches"]["1"][0][1].get<double>() == doctest::Approx(0.5));

    PHModel back = ph_model_from_json(j);
    CHECK(back.order_p == m.order_p);
    CHECK(back.branch_filters.at(3)[0] == m.branch_filters.at(3)[0]);

    auto pop = population_from_json(population_to_json({m, m}));
    CHECK(pop.size() == 2);
}
