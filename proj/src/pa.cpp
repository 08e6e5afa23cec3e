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

#include "pa.hpp"

#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace beamdpd
{
    void PHModel::validate() const
    {
        require(order_p >= 1 && order_p % 2 == 1, Errc::validation,
                "PHModel: order_p must be an odd integer >= 1");
        require(memory_n >= 0, Errc::validation, "PHModel: memory_n must be >= 0");
        require(!branch_filters.empty(), Errc::validation, "PHModel: no branches");
        bool linear_nonzero = false;
        for (const auto &[p, taps] : branch_filters)
        {
            require(p >= 1 && p <= order_p && p % 2 == 1, Errc::validation,
                    "PHModel: branch order " + std::to_string(p) + " invalid");
            require(static_cast<int>(taps.size()) == memory_n + 1, Errc::validation,
                    "PHModel: branch " + std::to_string(p) + " must have memory_n+1 taps");
            for (const cd &t : taps)
                require(std::isfinite(t.real()) && std::isfinite(t.imag()), Errc::validation,
                        "PHModel: non-finite tap");
        }
        auto it = branch_filters.find(1);
        require(it != branch_filters.end(), Errc::validation, "PHModel: linear branch missing");
        for (const cd &t : it->second)
            if (std::norm(t) > 0)
                linear_nonzero = true;
        require(linear_nonzero, Errc::validation, "PHModel: linear branch identically zero");
    }

    ComplexSignal apply_ph(const PHModel &model, const ComplexSignal &x)
    {
        model.validate();
        const std::size_t n = x.samples.size();
        ComplexSignal y;
        y.sample_rate_hz = x.sample_rate_hz;
        y.samples.assign(n, cd{0, 0});
        if (n == 0)
            return y;

        std::vector<double> a2(n); // |x|^2
        for (std::size_t i = 0; i < n; i++)
            a2[i] = std::norm(x.samples[i]);

        std::vector<cd> u(x.samples); // |x|^(p-1) x, built order by order
        int built = 1;
        for (const auto &[p, taps] : model.branch_filters) // std::map: ascending p
        {
            while (built < p)
            {
                for (std::size_t i = 0; i < n; i++)
                    u[i] *= a2[i];
                built += 2;
            }
            for (int l = 0; l <= model.memory_n; l++)
            {
                const cd c = taps[l];
                if (c == cd{0, 0})
                    continue;
                for (std::size_t i = static_cast<std::size_t>(l); i < n; i++)
                    y.samples[i] += c * u[i - l];
            }
        }
        return y;
    }

    PHModel third_order_memoryless(cd f1, cd f3)
    {
        require(f1 != cd{0, 0}, Errc::invalid_argument, "third_order_memoryless: f1 must be nonzero");
        PHModel m;
        m.order_p = 3;
        m.memory_n = 0;
        m.branch_filters[1] = {f1};
        m.branch_filters[3] = {f3};
        return m;
    }

    PHModel default_base_model()
    {
        // memory profile shared by all nonlinear branches
        const std::vector<double> profile = {1.0, 0.2, 0.04, 0.008};
        // Branch phases follow a compressive odd-order expansion; magnitudes
        // decay by `decay` per order step at the nominal envelope peak
        // (8.3 dB PAPR at unit power -> |x| about 2.6). The 11th-order branch
        // is raised above the geometric decay so a 9th-order predistorter
        // leaves a realistic residual (-60s dBc) instead of inverting the
        // model to the numeric floor.
        const double peak = 2.6, decay = 0.3, c3 = 0.02, k11 = 5.0;
        const double phases[5] = {std::arg(cd{-0.08, 0.02}), std::arg(cd{0.02, -0.01}),
                                  M_PI, M_PI / 2.0, M_PI};

        PHModel m;
        m.order_p = 11;
        m.memory_n = 3;
        m.branch_filters[1] = {cd{1.0, 0.0}, cd{0.05, -0.02}, cd{0.0, 0.01}, cd{0.005, 0.0}};
        const double r = decay / (peak * peak);
        const double mags[5] = {c3, c3 * r, c3 * r * r, c3 * r * r * r, c3 * r * r * r * r * k11};
        for (int idx = 0; idx < 5; idx++)
        {
            cd lead = std::polar(mags[idx], phases[idx]);
            std::vector<cd> taps;
            for (double w : profile)
                taps.push_back(lead * w);
            m.branch_filters[3 + 2 * idx] = std::move(taps);
        }
        return m;
    }

    double PaPopulationConfig::dispersion_for(int order) const
    {
        auto it = dispersion.find(order);
        return it != dispersion.end() ? it->second : dispersion_default;
    }

    void PaPopulationConfig::validate() const
    {
        require(count >= 1, Errc::validation, "population: count must be >= 1");
        require(dispersion_default >= 0, Errc::validation, "population: dispersion must be >= 0");
        for (const auto &[p, d] : dispersion)
            require(d >= 0, Errc::validation, "population: dispersion must be >= 0");
        require(max_retries >= 1, Errc::validation, "population: max_retries must be >= 1");
        base_model.validate();
        require(base_model.order_p == order && base_model.memory_n == memory, Errc::validation,
                "population: order/memory fields disagree with base_model");
    }

    std::vector<PHModel> synth_population(const PaPopulationConfig &cfg, const PaAclrProbe &probe,
                                          std::pair<double, double> aclr_band_dbc)
    {
        cfg.validate();
        Rng rng(cfg.rng_seed);
        std::vector<PHModel> out;
        out.reserve(cfg.count);
        for (int m = 0; m < cfg.count; m++)
        {
            bool accepted = false;
            for (int attempt = 0; attempt < cfg.max_retries && !accepted; attempt++)
            {
                PHModel cand = cfg.base_model;
                for (auto &[p, taps] : cand.branch_filters)
                {
                    double sd = cfg.dispersion_for(p);
                    for (cd &t : taps)
                        t *= 1.0 + sd * rng.cnormal();
                }
                if (probe)
                {
                    auto [lo, hi] = probe(cand);
                    double a = std::min(lo, hi), b = std::max(lo, hi);
                    if (a < aclr_band_dbc.first || b > aclr_band_dbc.second)
                        continue;
                }
                out.push_back(std::move(cand));
                accepted = true;
            }
            require(accepted, Errc::runtime,
                    "synth_population: model " + std::to_string(m) + " rejected " +
                        std::to_string(cfg.max_retries) +
                        " times; dispersion too large for the ACLR acceptance band");
        }
        return out;
    }

    nlohmann::json ph_model_to_json(const PHModel &model)
    {
        nlohmann::json j;
        j["order"] = model.order_p;
        j["memory"] = model.memory_n;
        nlohmann::json branches = nlohmann::json::object();
        for (const auto &[p, taps] : model.branch_filters)
        {
            nlohmann::json arr = nlohmann::json::array();
            for (const cd &t : taps)
                arr.push_back({t.real(), t.imag()});
            branches[std::to_string(p)] = std::move(arr);
        }
        j["branches"] = std::move(branches);
        return j;
    }

    PHModel ph_model_from_json(const nlohmann::json &j)
    {
        PHModel m;
        try
        {
            m.order_p = j.at("order").get<int>();
            m.memory_n = j.at("memory").get<int>();
            for (const auto &[key, arr] : j.at("branches").items())
            {
                std::vector<cd> taps;
                for (const auto &t : arr)
                    taps.emplace_back(t.at(0).get<double>(), t.at(1).get<double>());
                m.branch_filters[std::stoi(key)] = std::move(taps);
            }
        }
        catch (const nlohmann::json::exception &e)
        {
            fail(Errc::parse, std::string("PA model JSON: ") + e.what());
        }
        m.validate();
        return m;
    }

    nlohmann::json population_to_json(const std::vector<PHModel> &models)
    {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &m : models)
            arr.push_back(ph_model_to_json(m));
        return arr;
    }

    std::vector<PHModel> population_from_json(const nlohmann::json &j)
    {
        require(j.is_array(), Errc::parse, "population JSON must be an array of models");
        std::vector<PHModel> out;
        for (const auto &e : j)
            out.push_back(ph_model_from_json(e));
        return out;
    }
}
