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

#ifndef BEAMDPD_PA_HPP
#define BEAMDPD_PA_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "signal.hpp"

namespace beamdpd
{
    // Parallel-Hammerstein behavioral model: per odd order p a complex FIR
    // f_{p,0..N} acting on the static nonlinearity |x|^(p-1) x.
    struct PHModel
    {
        int order_p = 1;
        int memory_n = 0;
        std::map<int, std::vector<cd>> branch_filters; // odd order -> N+1 taps

        void validate() const;
    };

    // y(n) = sum_p sum_l f_{p,l} |x(n-l)|^(p-1) x(n-l), zero initial state
    ComplexSignal apply_ph(const PHModel &model, const ComplexSignal &x);

    PHModel third_order_memoryless(cd f1, cd f3);

    // Default 11th-order, 4-tap synthetic base model. Branch magnitudes decay
    // geometrically at the nominal peak amplitude (8.3 dB PAPR drive) so the
    // polynomial stays well-behaved when a predistorter expands the peaks;
    // the third-order lead is calibrated for ~-40 dBc ACLR at unit power.
    PHModel default_base_model();

    struct PaPopulationConfig
    {
        int count = 16;
        int order = 11;
        int memory = 3;
        PHModel base_model = default_base_model();
        std::map<int, double> dispersion; // per-order relative std-dev overrides
        double dispersion_default = 0.10;
        std::uint64_t rng_seed = 1;
        int max_retries = 200; // per-model rejection budget

        double dispersion_for(int order) const;
        void validate() const;
    };

    // Per-model ACLR probe: returns (lower, upper) adjacent-channel ratios in
    // dBc for one candidate model. Wired by the caller so the population
    // generator stays independent of the metrics stack.
    using PaAclrProbe = std::function<std::pair<double, double>(const PHModel &)>;

    // base_model with every tap scaled by (1 + delta), delta complex Gaussian
    // with the per-order std-dev. When a probe is supplied, each model is
    // redrawn until both adjacent-channel ratios fall inside aclr_band_dbc;
    // running out of retries is an error.
    std::vector<PHModel> synth_population(const PaPopulationConfig &cfg,
                                          const PaAclrProbe &probe = {},
                                          std::pair<double, double> aclr_band_dbc = {35.0, 45.0});

    // File format: {"order": P, "memory": N, "branches": {"1": [[re, im], ...]}}
    nlohmann::json ph_model_to_json(const PHModel &model);
    PHModel ph_model_from_json(const nlohmann::json &j);
    nlohmann::json population_to_json(const std::vector<PHModel> &models);
    std::vector<PHModel> population_from_json(const nlohmann::json &j);
}

#endif
