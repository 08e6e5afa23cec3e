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

#include "feedback.hpp"

#include <cmath>

#include "errors.hpp"
#include "rng.hpp"

namespace beamdpd
{
    void FeedbackNetwork::validate(int m_count) const
    {
        require(!deviations.empty() ? static_cast<int>(deviations.size()) == m_count : true,
                Errc::validation, "feedback: deviation count does not match the sub-array size");
        require(std::isfinite(coupling_gc.real()) && std::isfinite(coupling_gc.imag()),
                Errc::validation, "feedback: non-finite coupling");
        for (const cd &e : deviations)
            require(std::isfinite(e.real()) && std::isfinite(e.imag()), Errc::validation,
                    "feedback: non-finite deviation");
    }

    void MismatchConfig::validate() const
    {
        require(amplitude_range_pct[0] <= amplitude_range_pct[1], Errc::validation,
                "mismatch: amplitude range inverted");
        require(phase_range_deg[0] <= phase_range_deg[1], Errc::validation,
                "mismatch: phase range inverted");
    }

    std::vector<cd> sample_mismatch(const MismatchConfig &cfg, int m_count)
    {
        cfg.validate();
        require(m_count >= 1, Errc::invalid_argument, "sample_mismatch: M must be >= 1");
        Rng rng(cfg.rng_seed);
        std::vector<cd> eps(static_cast<std::size_t>(m_count));
        for (auto &e : eps)
        {
            double beta = rng.uniform(cfg.amplitude_range_pct[0], cfg.amplitude_range_pct[1]) / 100.0;
            double phi = rng.uniform(cfg.phase_range_deg[0], cfg.phase_range_deg[1]) * M_PI / 180.0;
            e = (1.0 + beta) * std::polar(1.0, phi) - 1.0;
        }
        return eps;
    }

    ComplexSignal observe(const SubArray &sub, const FeedbackNetwork &net,
                          const ComplexSignal &x_tilde)
    {
        sub.validate();
        net.validate(sub.size());

        const std::size_t n = x_tilde.samples.size();
        ComplexSignal z;
        z.sample_rate_hz = x_tilde.sample_rate_hz;
        z.samples.assign(n, cd{0, 0});

        ComplexSignal xm;
        xm.sample_rate_hz = x_tilde.sample_rate_hz;
        xm.samples.resize(n);
        for (std::size_t m = 0; m < sub.models.size(); m++)
        {
            cd branch_gain = net.coupling_gc * (1.0 + net.deviation(m));
            if (net.mode == FeedbackMode::anti_beamform)
            {
                for (std::size_t i = 0; i < n; i++)
                    xm.samples[i] = sub.weights[m] * x_tilde.samples[i];
                ComplexSignal ym = apply_ph(sub.models[m], xm);
                cd g = branch_gain * std::conj(sub.weights[m]);
                for (std::size_t i = 0; i < n; i++)
                    z.samples[i] += g * ym.samples[i];
            }
            else
            {
                ComplexSignal ym = apply_ph(sub.models[m], x_tilde);
                for (std::size_t i = 0; i < n; i++)
                    z.samples[i] += branch_gain * ym.samples[i];
            }
        }

        if (net.noise_enabled)
        {
            Rng rng(net.noise_seed);
            double sigma = std::sqrt(mean_power(z.samples) * std::pow(10.0, -net.noise_snr_db / 10.0));
            for (cd &v : z.samples)
                v += sigma * rng.cnormal();
        }
        return z;
    }
}
