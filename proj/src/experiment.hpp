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

#ifndef BEAMDPD_EXPERIMENT_HPP
#define BEAMDPD_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "array.hpp"
#include "dpd.hpp"
#include "feedback.hpp"
#include "metrics.hpp"
#include "ofdm.hpp"
#include "pa.hpp"

namespace beamdpd
{
    enum class Scenario
    {
        no_dpd,
        single_pa_learning,
        proposed,
    };

    std::string scenario_name(Scenario s);
    Scenario scenario_from_name(const std::string &name);

    struct PatternStageConfig
    {
        bool enabled = false;
        double angle_step_deg = 1.0;
        std::vector<int> antennas = {16, 32};
    };

    // One experiment: shared waveforms and population, the three Table-I
    // scenarios, optional spatial emission patterns. Component RNG seeds are
    // derived from the global seed, so a config plus seed pins every output
    // byte.
    struct ExperimentConfig
    {
        std::uint64_t seed = 1;
        std::string output_dir = "out";
        double steering_deg = 30.0;
        std::vector<Scenario> scenarios = {Scenario::no_dpd, Scenario::single_pa_learning,
                                           Scenario::proposed};
        OfdmConfig ofdm;           // num_symbols sets the evaluation burst
        PaPopulationConfig population;
        DpdConfig dpd;
        MismatchConfig mismatch;
        bool mismatch_enabled = true;
        double population_aclr_band_dbc[2] = {35.0, 45.0};
        std::optional<std::string> population_file;

        cd coupling_gc{1.0, 0.0};
        FeedbackMode feedback_mode = FeedbackMode::anti_beamform;
        bool feedback_noise_enabled = false;
        double feedback_noise_snr_db = 60.0;

        double element_spacing_wavelengths = 0.5;
        PatternStageConfig pattern;
        bool dump_waveforms = false;

        static ExperimentConfig from_json(const nlohmann::json &j);
        nlohmann::json to_json() const;

        // CI-scale run: shrinks the learning block, iteration count and
        // evaluation burst
        void apply_fast();

        // all invariant checks, collected as human-readable diagnostics
        std::vector<std::string> validate() const;
    };

    struct ScenarioResult
    {
        std::string scenario;
        MetricsReport metrics;
        double final_block_corr_max = 0.0; // 0 for no_dpd
    };

    struct RunReport
    {
        std::vector<ScenarioResult> results;
        nlohmann::json report; // full report.json content
    };

    // Execute the configured scenarios (and patterns when enabled), write all
    // artifacts into output_dir, and return the metrics.
    RunReport run(const ExperimentConfig &cfg);

    // Pattern stage only: spatial emission patterns for each M in the
    // antenna list plus the single-antenna reference.
    RunReport run_patterns(const ExperimentConfig &cfg);
}

#endif
