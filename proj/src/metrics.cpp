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

#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace beamdpd
{
    void ChannelDef::validate(double fs) const
    {
        require(measurement_bandwidth_hz > 0, Errc::validation, "channel: zero bandwidth");
        require(wanted_hi > wanted_lo, Errc::validation, "channel: inverted wanted band");
        require(adjacent_lower_hi <= wanted_lo && wanted_hi <= adjacent_upper_lo, Errc::validation,
                "channel: bands overlap");
        double w = wanted_hi - wanted_lo;
        require(std::abs((adjacent_lower_hi - adjacent_lower_lo) - w) < 1e-6 &&
                    std::abs((adjacent_upper_hi - adjacent_upper_lo) - w) < 1e-6,
                Errc::validation, "channel: adjacent bandwidths must equal the wanted bandwidth");
        require(adjacent_lower_lo >= -fs / 2 && adjacent_upper_hi <= fs / 2, Errc::validation,
                "channel: bands outside the Nyquist range");
    }

    ChannelDef make_channel(double center_hz, double bandwidth_hz)
    {
        require(bandwidth_hz > 0, Errc::invalid_argument, "make_channel: bandwidth must be > 0");
        ChannelDef ch;
        ch.center_hz = center_hz;
        ch.measurement_bandwidth_hz = bandwidth_hz;
        ch.wanted_lo = center_hz - bandwidth_hz / 2;
        ch.wanted_hi = center_hz + bandwidth_hz / 2;
        ch.adjacent_lower_lo = ch.wanted_lo - bandwidth_hz;
        ch.adjacent_lower_hi = ch.wanted_lo;
        ch.adjacent_upper_lo = ch.wanted_hi;
        ch.adjacent_upper_hi = ch.wanted_hi + bandwidth_hz;
        return ch;
    }

    std::pair<double, double> occupied_bandwidth(const Psd &psd, double fraction)
    {
        require(fraction > 0 && fraction <= 1.0, Errc::invalid_argument,
                "occupied_bandwidth: fraction must be in (0, 1]");
        double tot = total_power(psd);
        require(tot > 0, Errc::invalid_argument, "occupied_bandwidth: degenerate PSD");
        for (double v : psd.density)
            require(v >= 0, Errc::invalid_argument, "occupied_bandwidth: negative PSD");

        // centroid snapped to the grid
        double cen = 0.0;
        for (std::size_t i = 0; i < psd.freq_hz.size(); i++)
            cen += psd.freq_hz[i] * psd.density[i];
        cen = cen * psd.bin_hz / tot;
        std::size_t ci = 0;
        double best = 1e300;
        for (std::size_t i = 0; i < psd.freq_hz.size(); i++)
            if (std::abs(psd.freq_hz[i] - cen) < best)
            {
                best = std::abs(psd.freq_hz[i] - cen);
                ci = i;
            }

        double acc = psd.density[ci] * psd.bin_hz;
        std::size_t k = 0;
        while (acc < fraction * tot)
        {
            k++;
            bool grew = false;
            if (ci >= k)
            {
                acc += psd.density[ci - k] * psd.bin_hz;
                grew = true;
            }
            if (ci + k < psd.density.size())
            {
                acc += psd.density[ci + k] * psd.bin_hz;
                grew = true;
            }
            if (!grew)
                break; // full grid reached
        }
        double lo = psd.freq_hz[ci >= k ? ci - k : 0];
        double hi = psd.freq_hz[std::min(ci + k, psd.freq_hz.size() - 1)];
        return {lo, hi};
    }

    ChannelDef channel_from_psd(const Psd &psd, double min_bandwidth_hz, double fraction)
    {
        auto [lo, hi] = occupied_bandwidth(psd, fraction);
        double center = (lo + hi) / 2;
        double bw = std::max(hi - lo, min_bandwidth_hz);
        return make_channel(center, bw);
    }

    std::pair<double, double> aclr_from_psd(const Psd &psd, const ChannelDef &ch)
    {
        double pw = integrate_band(psd, ch.wanted_lo, ch.wanted_hi);
        double pl = integrate_band(psd, ch.adjacent_lower_lo, ch.adjacent_lower_hi);
        double pu = integrate_band(psd, ch.adjacent_upper_lo, ch.adjacent_upper_hi);
        require(pw > 0 && pl > 0 && pu > 0, Errc::runtime, "aclr: empty band power");
        return {10.0 * std::log10(pw / pl), 10.0 * std::log10(pw / pu)};
    }

    std::pair<double, double> aclr(const ComplexSignal &sig, const ChannelDef &ch, Window window,
                                   int nfft, double overlap)
    {
        ch.validate(sig.sample_rate_hz);
        return aclr_from_psd(psd_welch(sig, nfft, overlap, window), ch);
    }

    double evm_percent(const SymbolGrid &ref, const ComplexSignal &rx, const OfdmConfig &cfg,
                       EvmEqualizer eq)
    {
        require(ref.num_symbols >= 1, Errc::invalid_argument, "evm: empty reference grid");
        SymbolGrid y = ofdm_demodulate(rx, cfg, ref.num_symbols);
        require(y.subcarrier_indices == ref.subcarrier_indices, Errc::invalid_argument,
                "evm: grid shape mismatch");

        const std::size_t nsc = ref.subcarrier_indices.size();
        const std::size_t total = ref.points.size();
        double perr = 0.0, pref = 0.0;
        if (eq == EvmEqualizer::single_tap)
        {
            cd num{0, 0};
            double den = 0.0;
            for (std::size_t i = 0; i < total; i++)
            {
                num += std::conj(y.points[i]) * ref.points[i];
                den += std::norm(y.points[i]);
            }
            require(den > 0, Errc::invalid_argument, "evm: all-zero received grid");
            cd c = num / den;
            for (std::size_t i = 0; i < total; i++)
            {
                perr += std::norm(c * y.points[i] - ref.points[i]);
                pref += std::norm(ref.points[i]);
            }
        }
        else
        {
            for (std::size_t sc = 0; sc < nsc; sc++)
            {
                cd num{0, 0};
                double den = 0.0;
                for (int s = 0; s < ref.num_symbols; s++)
                {
                    std::size_t i = static_cast<std::size_t>(s) * nsc + sc;
                    num += std::conj(y.points[i]) * ref.points[i];
                    den += std::norm(y.points[i]);
                }
                cd c = den > 0 ? num / den : cd{0, 0};
                for (int s = 0; s < ref.num_symbols; s++)
                {
                    std::size_t i = static_cast<std::size_t>(s) * nsc + sc;
                    perr += std::norm(c * y.points[i] - ref.points[i]);
                    pref += std::norm(ref.points[i]);
                }
            }
        }
        require(pref > 0, Errc::invalid_argument, "evm: zero reference power");
        return 100.0 * std::sqrt(perr / pref);
    }
}
