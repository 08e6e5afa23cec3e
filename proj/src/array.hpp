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

#ifndef BEAMDPD_ARRAY_HPP
#define BEAMDPD_ARRAY_HPP

#include <vector>

#include "metrics.hpp"
#include "pa.hpp"
#include "signal.hpp"

namespace beamdpd
{
    // Uniform linear array, isotropic elements.
    struct ArrayGeometry
    {
        double element_spacing_wavelengths = 0.5;
    };

    // M parallel-Hammerstein PAs behind unit-modulus analog phase shifters.
    struct SubArray
    {
        std::vector<PHModel> models;
        std::vector<cd> weights;
        ArrayGeometry geometry;

        int size() const { return static_cast<int>(models.size()); }
        void validate() const; // |w_m| = 1 within 1e-12, counts agree
    };

    // w_m = exp(j 2 pi spacing m sin(theta0)), m = 0..M-1
    std::vector<cd> steering_weights(int m_count, double theta0_deg,
                                     double spacing_wavelengths = 0.5);

    // x_m = w_m * x
    std::vector<ComplexSignal> branch_inputs(const ComplexSignal &x, const SubArray &sub);

    // y = sum_m w_m^* PA_m(w_m x); equals sum_m PA_m(x) for odd-order models
    ComplexSignal combined_main_beam(const SubArray &sub, const ComplexSignal &x);

    // Relative in-band / adjacent-channel power versus azimuth, normalized so
    // the in-band power at the steering angle is exactly 0 dB.
    struct EmissionPattern
    {
        std::vector<double> angles_deg;
        std::vector<double> inband_db;
        std::vector<double> oob_lower_db;
        std::vector<double> oob_upper_db;
    };

    std::vector<double> default_angle_grid(double step_deg = 1.0); // [-90, 90]

    // Far-field sweep: s_theta(n) = sum_m PA_m(w_m x)(n) exp(-j 2 pi d m sin(theta)),
    // Welch PSD per angle, band powers from the channel definition.
    EmissionPattern emission_pattern(const SubArray &sub, const ComplexSignal &x_tilde,
                                     double steering_deg, const ChannelDef &channel,
                                     const std::vector<double> &angles_deg,
                                     Window window = Window::blackman_harris4, int nfft = 4096,
                                     double overlap = 0.5);
}

#endif
