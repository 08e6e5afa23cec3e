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

#ifndef BEAMDPD_METRICS_HPP
#define BEAMDPD_METRICS_HPP

#include <string>
#include <utility>

#include "ofdm.hpp"
#include "signal.hpp"

namespace beamdpd
{
    // Wanted channel plus the two abutting adjacent channels, all of equal
    // measurement bandwidth.
    struct ChannelDef
    {
        double center_hz = 0.0;
        double wanted_lo = 0.0, wanted_hi = 0.0;
        double adjacent_lower_lo = 0.0, adjacent_lower_hi = 0.0;
        double adjacent_upper_lo = 0.0, adjacent_upper_hi = 0.0;
        double measurement_bandwidth_hz = 0.0;

        void validate(double sample_rate_hz) const;
    };

    ChannelDef make_channel(double center_hz, double bandwidth_hz);

    // Smallest centroid-symmetric contiguous band holding >= fraction of the
    // integrated PSD; edges land on the PSD grid.
    std::pair<double, double> occupied_bandwidth(const Psd &psd, double fraction = 0.99);

    // Channel for a measured spectrum: wanted band = occupied bandwidth, but
    // never narrower than min_bandwidth_hz (the allocated channel). A 99%
    // band taken literally would put ~0.5% of the carrier power in each
    // adjacent channel and cap every ACLR readout near 23 dB.
    ChannelDef channel_from_psd(const Psd &psd, double min_bandwidth_hz, double fraction = 0.99);

    // (lower, upper) adjacent-channel leakage ratios, dBc
    std::pair<double, double> aclr_from_psd(const Psd &psd, const ChannelDef &ch);
    std::pair<double, double> aclr(const ComplexSignal &sig, const ChannelDef &ch,
                                   Window window = Window::blackman_harris4, int nfft = 4096,
                                   double overlap = 0.5);

    enum class EvmEqualizer
    {
        single_tap,     // one complex LS coefficient across all subcarriers
        per_subcarrier, // independent LS coefficient per subcarrier
    };

    // Demodulate rx against the reference grid, equalize, and return
    // sqrt(P_error / P_ref) * 100.
    double evm_percent(const SymbolGrid &ref, const ComplexSignal &rx, const OfdmConfig &cfg,
                       EvmEqualizer eq = EvmEqualizer::single_tap);

    struct MetricsReport
    {
        std::string scenario;
        double evm_pct = 0.0;
        double aclr_lower_dbc = 0.0;
        double aclr_upper_dbc = 0.0;
        double occupied_bw_hz = 0.0;
    };
}

#endif
