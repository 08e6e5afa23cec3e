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

#include "signal.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "fft.hpp"

namespace beamdpd
{
    void ComplexSignal::validate() const
    {
        require(sample_rate_hz > 0.0, Errc::validation, "sample_rate_hz must be positive");
        for (const cd &v : samples)
            require(std::isfinite(v.real()) && std::isfinite(v.imag()), Errc::validation,
                    "signal contains non-finite samples");
    }

    double mean_power(std::span<const cd> x)
    {
        if (x.empty())
            return 0.0;
        double acc = 0.0;
        for (const cd &v : x)
            acc += std::norm(v);
        return acc / static_cast<double>(x.size());
    }

    double peak_power(std::span<const cd> x)
    {
        double p = 0.0;
        for (const cd &v : x)
            p = std::max(p, std::norm(v));
        return p;
    }

    double papr_db(const ComplexSignal &sig)
    {
        require(!sig.samples.empty(), Errc::invalid_argument, "papr_db: empty signal");
        double mp = mean_power(sig.samples);
        require(mp > 0.0, Errc::invalid_argument, "papr_db: all-zero signal");
        return 10.0 * std::log10(peak_power(sig.samples) / mp);
    }

    void normalize_power(ComplexSignal &sig)
    {
        double mp = mean_power(sig.samples);
        if (mp <= 0.0)
            return;
        double s = 1.0 / std::sqrt(mp);
        for (cd &v : sig.samples)
            v *= s;
    }

    std::vector<double> make_window(Window w, int n)
    {
        require(n > 0, Errc::invalid_argument, "window length must be positive");
        std::vector<double> win(static_cast<std::size_t>(n), 1.0);
        switch (w)
        {
        case Window::rect:
            break;
        case Window::hann:
            for (int i = 0; i < n; i++)
                win[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n); // periodic form
            break;
        case Window::blackman_harris4:
            // minimum 4-term Blackman-Harris, -92 dB sidelobes; needed when
            // integrating adjacent-channel power 60+ dB below the carrier
            for (int i = 0; i < n; i++)
            {
                double t = 2.0 * M_PI * i / n;
                win[i] = 0.35875 - 0.48829 * std::cos(t) + 0.14128 * std::cos(2 * t) -
                         0.01168 * std::cos(3 * t);
            }
            break;
        }
        return win;
    }

    Psd psd_welch(const ComplexSignal &sig, int nfft, double overlap_fraction, Window window)
    {
        require(nfft > 0, Errc::invalid_argument, "psd_welch: nfft must be positive");
        require(static_cast<std::size_t>(nfft) <= sig.samples.size(), Errc::invalid_argument,
                "psd_welch: nfft exceeds signal length");
        require(overlap_fraction >= 0.0 && overlap_fraction < 1.0, Errc::invalid_argument,
                "psd_welch: overlap_fraction must be in [0, 1)");
        require(sig.sample_rate_hz > 0.0, Errc::invalid_argument, "psd_welch: bad sample rate");

        const double fs = sig.sample_rate_hz;
        const std::size_t n = static_cast<std::size_t>(nfft);
        std::size_t hop = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                       std::lround(nfft * (1.0 - overlap_fraction))));
        std::size_t nseg = (sig.samples.size() - n) / hop + 1;

        std::vector<double> win = make_window(window, nfft);
        double wpow = 0.0;
        for (double v : win)
            wpow += v * v;

        std::vector<double> acc(n, 0.0);
        std::vector<cd> seg(n);
        for (std::size_t s = 0; s < nseg; s++)
        {
            const cd *src = sig.samples.data() + s * hop;
            for (std::size_t i = 0; i < n; i++)
                seg[i] = src[i] * win[i];
            fft::forward(seg);
            for (std::size_t i = 0; i < n; i++)
                acc[i] += std::norm(seg[i]);
        }

        const double scale = 1.0 / (fs * wpow * static_cast<double>(nseg));
        const double df = fs / static_cast<double>(nfft);

        // reorder so the grid runs ascending over (-fs/2, fs/2]
        Psd out;
        out.bin_hz = df;
        out.freq_hz.resize(n);
        out.density.resize(n);
        const std::size_t half = n / 2;
        std::size_t idx = 0;
        for (std::size_t k = half + 1; k < n; k++, idx++)
        {
            out.freq_hz[idx] = (static_cast<double>(k) - static_cast<double>(n)) * df;
            out.density[idx] = acc[k] * scale;
        }
        for (std::size_t k = 0; k <= half; k++, idx++)
        {
            out.freq_hz[idx] = static_cast<double>(k) * df;
            out.density[idx] = acc[k] * scale;
        }
        return out;
    }

    double integrate_band(const Psd &psd, double f_lo, double f_hi)
    {
        require(f_hi >= f_lo, Errc::invalid_argument, "integrate_band: inverted band");
        double acc = 0.0;
        for (std::size_t i = 0; i < psd.freq_hz.size(); i++)
            if (psd.freq_hz[i] >= f_lo && psd.freq_hz[i] < f_hi)
                acc += psd.density[i];
        return acc * psd.bin_hz;
    }

    double total_power(const Psd &psd)
    {
        double acc = 0.0;
        for (double v : psd.density)
            acc += v;
        return acc * psd.bin_hz;
    }
}
