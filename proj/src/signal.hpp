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

#ifndef BEAMDPD_SIGNAL_HPP
#define BEAMDPD_SIGNAL_HPP

#include <complex>
#include <span>
#include <vector>

namespace beamdpd
{
    using cd = std::complex<double>;

    // Uniformly sampled complex baseband sequence; the carrier for every
    // waveform in the simulator.
    struct ComplexSignal
    {
        std::vector<cd> samples;
        double sample_rate_hz = 1.0;

        std::size_t size() const { return samples.size(); }
        void validate() const; // fs > 0, all samples finite
    };

    double mean_power(std::span<const cd> x);
    double peak_power(std::span<const cd> x);

    // 10*log10(max|s|^2 / mean|s|^2); error on empty input
    double papr_db(const ComplexSignal &sig);

    // scale so that mean |s|^2 == 1 (no-op on all-zero input)
    void normalize_power(ComplexSignal &sig);

    enum class Window
    {
        hann,
        blackman_harris4,
        rect,
    };

    std::vector<double> make_window(Window w, int n);

    // Two-sided power spectral density, linear units (power per Hz).
    // freq_hz ascending over (-fs/2, fs/2]; sum(density)*bin_hz equals the
    // signal mean power up to partial-segment truncation.
    struct Psd
    {
        std::vector<double> freq_hz;
        std::vector<double> density;
        double bin_hz = 0.0;
    };

    // Windowed averaged periodogram. nfft must not exceed the signal length;
    // overlap_fraction in [0, 1).
    Psd psd_welch(const ComplexSignal &sig, int nfft = 4096, double overlap_fraction = 0.5,
                  Window window = Window::hann);

    // Integrated density over [f_lo, f_hi) on the PSD grid.
    double integrate_band(const Psd &psd, double f_lo, double f_hi);
    double total_power(const Psd &psd);
}

#endif
