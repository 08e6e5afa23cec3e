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

#include "array.hpp"

#include <cmath>

#include "errors.hpp"

namespace beamdpd
{
    void SubArray::validate() const
    {
        require(!models.empty(), Errc::validation, "sub-array: no PA models");
        require(models.size() == weights.size(), Errc::validation,
                "sub-array: model and weight counts differ");
        for (const cd &w : weights)
            require(std::abs(std::abs(w) - 1.0) <= 1e-12, Errc::validation,
                    "sub-array: weights must be unit modulus");
        require(geometry.element_spacing_wavelengths > 0, Errc::validation,
                "sub-array: element spacing must be positive");
        for (const auto &m : models)
            m.validate();
    }

    std::vector<cd> steering_weights(int m_count, double theta0_deg, double spacing_wavelengths)
    {
        require(m_count >= 1, Errc::invalid_argument, "steering_weights: M must be >= 1");
        std::vector<cd> w(static_cast<std::size_t>(m_count));
        double s = std::sin(theta0_deg * M_PI / 180.0);
        for (int m = 0; m < m_count; m++)
            w[m] = std::polar(1.0, 2.0 * M_PI * spacing_wavelengths * m * s);
        return w;
    }

    std::vector<ComplexSignal> branch_inputs(const ComplexSignal &x, const SubArray &sub)
    {
        sub.validate();
        std::vector<ComplexSignal> out(sub.models.size());
        for (std::size_t m = 0; m < sub.models.size(); m++)
        {
            out[m].sample_rate_hz = x.sample_rate_hz;
            out[m].samples.resize(x.samples.size());
            for (std::size_t i = 0; i < x.samples.size(); i++)
                out[m].samples[i] = sub.weights[m] * x.samples[i];
        }
        return out;
    }

    ComplexSignal combined_main_beam(const SubArray &sub, const ComplexSignal &x)
    {
        sub.validate();
        ComplexSignal y;
        y.sample_rate_hz = x.sample_rate_hz;
        y.samples.assign(x.samples.size(), cd{0, 0});
        ComplexSignal xm;
        xm.sample_rate_hz = x.sample_rate_hz;
        xm.samples.resize(x.samples.size());
        for (std::size_t m = 0; m < sub.models.size(); m++)
        {
            for (std::size_t i = 0; i < x.samples.size(); i++)
                xm.samples[i] = sub.weights[m] * x.samples[i];
            ComplexSignal ym = apply_ph(sub.models[m], xm);
            cd wc = std::conj(sub.weights[m]);
            for (std::size_t i = 0; i < y.samples.size(); i++)
                y.samples[i] += wc * ym.samples[i];
        }
        return y;
    }

    std::vector<double> default_angle_grid(double step_deg)
    {
        require(step_deg > 0, Errc::invalid_argument, "angle grid: step must be positive");
        std::vector<double> grid;
        for (double a = -90.0; a <= 90.0 + 1e-9; a += step_deg)
            grid.push_back(a);
        return grid;
    }

    EmissionPattern emission_pattern(const SubArray &sub, const ComplexSignal &x_tilde,
                                     double steering_deg, const ChannelDef &channel,
                                     const std::vector<double> &angles_deg, Window window, int nfft,
                                     double overlap)
    {
        sub.validate();
        require(!angles_deg.empty(), Errc::invalid_argument, "emission_pattern: empty angle grid");
        channel.validate(x_tilde.sample_rate_hz);

        // per-element outputs including the analog beamformer
        const std::size_t n = x_tilde.samples.size();
        std::vector<ComplexSignal> y(sub.models.size());
        {
            ComplexSignal xm;
            xm.sample_rate_hz = x_tilde.sample_rate_hz;
            xm.samples.resize(n);
            for (std::size_t m = 0; m < sub.models.size(); m++)
            {
                for (std::size_t i = 0; i < n; i++)
                    xm.samples[i] = sub.weights[m] * x_tilde.samples[i];
                y[m] = apply_ph(sub.models[m], xm);
            }
        }

        const double d = sub.geometry.element_spacing_wavelengths;
        auto bands_at = [&](double theta_deg)
        {
            ComplexSignal s;
            s.sample_rate_hz = x_tilde.sample_rate_hz;
            s.samples.assign(n, cd{0, 0});
            double st = std::sin(theta_deg * M_PI / 180.0);
            for (std::size_t m = 0; m < y.size(); m++)
            {
                cd ph = std::polar(1.0, -2.0 * M_PI * d * static_cast<double>(m) * st);
                for (std::size_t i = 0; i < n; i++)
                    s.samples[i] += ph * y[m].samples[i];
            }
            Psd psd = psd_welch(s, nfft, overlap, window);
            return std::array<double, 3>{
                integrate_band(psd, channel.wanted_lo, channel.wanted_hi),
                integrate_band(psd, channel.adjacent_lower_lo, channel.adjacent_lower_hi),
                integrate_band(psd, channel.adjacent_upper_lo, channel.adjacent_upper_hi)};
        };

        const double p0 = bands_at(steering_deg)[0]; // normalization reference
        require(p0 > 0, Errc::runtime, "emission_pattern: zero in-band power at steering angle");

        EmissionPattern out;
        out.angles_deg = angles_deg;
        out.inband_db.resize(angles_deg.size());
        out.oob_lower_db.resize(angles_deg.size());
        out.oob_upper_db.resize(angles_deg.size());
        for (std::size_t a = 0; a < angles_deg.size(); a++)
        {
            auto b = bands_at(angles_deg[a]);
            out.inband_db[a] = 10.0 * std::log10(b[0] / p0);
            out.oob_lower_db[a] = 10.0 * std::log10(b[1] / p0);
            out.oob_upper_db[a] = 10.0 * std::log10(b[2] / p0);
        }
        return out;
    }
}
