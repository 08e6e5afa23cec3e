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

#ifndef BEAMDPD_OFDM_HPP
#define BEAMDPD_OFDM_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "signal.hpp"

namespace beamdpd
{
    enum class Constellation
    {
        qam16,
    };

    // CP-OFDM numerology. Defaults follow an LTE-like 20 MHz carrier: 1200
    // active subcarriers at 15 kHz, synthesized directly on the 120 MHz grid
    // (8000-point FFT), CP fraction 1/14.
    struct OfdmConfig
    {
        double occupied_bandwidth_hz = 20e6;
        double sample_rate_hz = 120e6;
        double subcarrier_spacing_hz = 15e3;
        int num_active_subcarriers = 1200;
        Constellation constellation = Constellation::qam16;
        int num_symbols = 28;
        double cyclic_prefix_fraction = 1.0 / 14.0;
        std::uint64_t rng_seed = 1;

        // PAPR reduction by iterative clipping and filtering. Clipping runs
        // clip_margin_db below the target so the post-filter regrowth still
        // lands under the target. target <= 0 disables the stage.
        double papr_target_db = 8.3;
        int papr_max_iters = 6;
        double papr_clip_margin_db = 0.25;

        // Raised-cosine symbol crossfade (weighted overlap-add). The taper
        // lives inside the cyclic prefix, so demodulation is unaffected while
        // the rectangular-pulse spectral skirts drop below -90 dBc.
        int wola_taper_samples = 512;

        int fft_size() const;
        int cp_len() const;
        int symbol_stride() const; // cp_len + fft_size
        // active subcarrier indices k (DC excluded, negative side first)
        std::vector<int> active_subcarriers() const;
        void validate() const;
    };

    // Ideal constellation points per symbol and active subcarrier.
    struct SymbolGrid
    {
        int num_symbols = 0;
        std::vector<int> subcarrier_indices;
        std::vector<cd> points; // row-major [symbol][subcarrier]

        const cd &at(int sym, int sc) const
        {
            return points[static_cast<std::size_t>(sym) * subcarrier_indices.size() + sc];
        }
    };

    std::span<const cd> constellation_points(Constellation c);

    // Random payload OFDM burst: IFFT synthesis on the oversampled grid,
    // per-symbol clipping and filtering, WOLA assembly, CP attachment, unit
    // average power. Deterministic in cfg.rng_seed.
    std::pair<ComplexSignal, SymbolGrid> generate_ofdm(const OfdmConfig &cfg);

    // Synthesize the waveform for a caller-provided grid (test hook and EVM
    // reference remodulation).
    ComplexSignal modulate_grid(const OfdmConfig &cfg, const SymbolGrid &grid);

    // FFT demodulation back to active-subcarrier points; the input must hold
    // at least num_symbols symbol strides.
    SymbolGrid ofdm_demodulate(const ComplexSignal &rx, const OfdmConfig &cfg, int num_symbols);

    // Standalone clipping-and-filtering on an arbitrary signal; the in-band
    // mask keeps FFT bins whose frequency lies in [band_lo_hz, band_hi_hz].
    // Stops early once the measured PAPR reaches the target; output is
    // renormalized to unit average power unless no clipping was applied.
    ComplexSignal reduce_papr_clip_filter(const ComplexSignal &sig, double band_lo_hz,
                                          double band_hi_hz, double target_papr_db, int max_iters,
                                          std::vector<double> *papr_trace = nullptr,
                                          double clip_margin_db = 0.0);
}

#endif
