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

#ifndef BEAMDPD_FEEDBACK_HPP
#define BEAMDPD_FEEDBACK_HPP

#include <cstdint>
#include <vector>

#include "array.hpp"
#include "signal.hpp"

namespace beamdpd
{
    enum class FeedbackMode
    {
        anti_beamform,  // co-phase the coupler outputs with w_m^*
        weights_to_one, // set all beamforming weights to one during learning
    };

    // Single observation receiver: per-branch couplers with complex gain
    // deviations eps_m around the nominal coupling g_c, combined into one
    // baseband signal.
    struct FeedbackNetwork
    {
        cd coupling_gc{1.0, 0.0};
        std::vector<cd> deviations; // eps_m; empty means all zero
        FeedbackMode mode = FeedbackMode::anti_beamform;

        // optional receiver noise hook (off by default)
        bool noise_enabled = false;
        double noise_snr_db = 60.0;
        std::uint64_t noise_seed = 0;

        void validate(int m_count) const;
        cd deviation(std::size_t m) const
        {
            return deviations.empty() ? cd{0, 0} : deviations[m];
        }
    };

    struct MismatchConfig
    {
        double amplitude_range_pct[2] = {-10.0, 10.0};
        double phase_range_deg[2] = {-10.0, 10.0};
        std::uint64_t rng_seed = 1;

        void validate() const;
    };

    // Realized coupler gain is (1+beta) e^{j phi} with beta, phi uniform over
    // the configured ranges; returns eps_m = (1+beta) e^{j phi} - 1.
    std::vector<cd> sample_mismatch(const MismatchConfig &cfg, int m_count);

    // z = g_c sum_m (1+eps_m) w_m^* PA_m(w_m x)   (anti_beamform)
    // z = g_c sum_m (1+eps_m) PA_m(x)             (weights_to_one)
    ComplexSignal observe(const SubArray &sub, const FeedbackNetwork &net,
                          const ComplexSignal &x_tilde);
}

#endif
