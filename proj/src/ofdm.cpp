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

#include "ofdm.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "fft.hpp"
#include "rng.hpp"

namespace beamdpd
{
    namespace
    {
        // 16-QAM, unit average power
        const std::vector<cd> qam16_points = []
        {
            std::vector<cd> pts;
            const double s = 1.0 / std::sqrt(10.0);
            for (double re : {-3.0, -1.0, 1.0, 3.0})
                for (double im : {-3.0, -1.0, 1.0, 3.0})
                    pts.emplace_back(re * s, im * s);
            return pts;
        }();

        void clip_to(std::vector<cd> &x, double threshold)
        {
            for (cd &v : x)
            {
                double m = std::abs(v);
                if (m > threshold)
                    v *= threshold / m;
            }
        }

        double batch_papr_db(const std::vector<std::vector<cd>> &cores)
        {
            double peak = 0.0, acc = 0.0;
            std::size_t n = 0;
            for (const auto &c : cores)
            {
                peak = std::max(peak, peak_power(c));
                acc += mean_power(c) * static_cast<double>(c.size());
                n += c.size();
            }
            return 10.0 * std::log10(peak / (acc / static_cast<double>(n)));
        }
    }

    std::span<const cd> constellation_points(Constellation c)
    {
        switch (c)
        {
        case Constellation::qam16:
            return qam16_points;
        }
        fail(Errc::invalid_argument, "unknown constellation");
    }

    int OfdmConfig::fft_size() const
    {
        return static_cast<int>(std::lround(sample_rate_hz / subcarrier_spacing_hz));
    }

    int OfdmConfig::cp_len() const
    {
        return static_cast<int>(std::lround(fft_size() * cyclic_prefix_fraction));
    }

    int OfdmConfig::symbol_stride() const
    {
        return fft_size() + cp_len();
    }

    std::vector<int> OfdmConfig::active_subcarriers() const
    {
        // DC excluded; negative half gets floor(A/2), e.g. A=1200 -> -600..-1, 1..600
        int neg = num_active_subcarriers / 2;
        int pos = num_active_subcarriers - neg;
        std::vector<int> ks;
        ks.reserve(num_active_subcarriers);
        for (int k = -neg; k < 0; k++)
            ks.push_back(k);
        for (int k = 1; k <= pos; k++)
            ks.push_back(k);
        return ks;
    }

    void OfdmConfig::validate() const
    {
        require(sample_rate_hz > 0 && subcarrier_spacing_hz > 0, Errc::validation,
                "ofdm: sample rate and subcarrier spacing must be positive");
        require(num_active_subcarriers >= 1, Errc::validation,
                "ofdm: need at least one active subcarrier");
        require(num_symbols >= 1, Errc::validation, "ofdm: num_symbols must be >= 1");
        require(num_active_subcarriers * subcarrier_spacing_hz <= occupied_bandwidth_hz,
                Errc::validation,
                "ofdm: num_active_subcarriers * subcarrier_spacing_hz exceeds occupied_bandwidth_hz");
        require(sample_rate_hz > occupied_bandwidth_hz, Errc::validation,
                "ofdm: sample_rate_hz must exceed occupied_bandwidth_hz");
        double ratio = sample_rate_hz / subcarrier_spacing_hz;
        require(std::abs(ratio - std::lround(ratio)) < 1e-6, Errc::validation,
                "ofdm: sample_rate_hz must be an integer multiple of subcarrier_spacing_hz");
        require(cyclic_prefix_fraction >= 0 && cyclic_prefix_fraction < 1, Errc::validation,
                "ofdm: cyclic_prefix_fraction must be in [0, 1)");
        require(fft_size() > num_active_subcarriers, Errc::validation,
                "ofdm: FFT size must exceed the number of active subcarriers");
        require(wola_taper_samples >= 0 && wola_taper_samples <= cp_len(), Errc::validation,
                "ofdm: wola_taper_samples must fit inside the cyclic prefix");
        require(papr_max_iters >= 0, Errc::validation, "ofdm: papr_max_iters must be >= 0");
    }

    namespace
    {
        std::vector<std::vector<cd>> synthesize_cores(const OfdmConfig &cfg, const SymbolGrid &grid)
        {
            const int nfft = cfg.fft_size();
            const auto &ks = grid.subcarrier_indices;
            const double scale = static_cast<double>(nfft) /
                                 std::sqrt(static_cast<double>(ks.size()));
            std::vector<std::vector<cd>> cores(grid.num_symbols);
            std::vector<cd> freq(static_cast<std::size_t>(nfft));
            for (int s = 0; s < grid.num_symbols; s++)
            {
                std::fill(freq.begin(), freq.end(), cd{0, 0});
                for (std::size_t a = 0; a < ks.size(); a++)
                {
                    int bin = ks[a] >= 0 ? ks[a] : ks[a] + nfft;
                    freq[bin] = grid.at(s, static_cast<int>(a)) * scale;
                }
                fft::inverse(freq);
                cores[s] = freq;
            }
            return cores;
        }

        // clip against a batch-global threshold, then confine each symbol back
        // to its active bins; renormalize batch power each pass
        void clip_and_filter_cores(const OfdmConfig &cfg, std::vector<std::vector<cd>> &cores)
        {
            if (!(cfg.papr_target_db > 0) || !std::isfinite(cfg.papr_target_db) ||
                cfg.papr_max_iters == 0)
                return;
            const int nfft = cfg.fft_size();
            std::vector<bool> keep(static_cast<std::size_t>(nfft), false);
            for (int k : cfg.active_subcarriers())
                keep[k >= 0 ? k : k + nfft] = true;

            for (int it = 0; it < cfg.papr_max_iters; it++)
            {
                if (batch_papr_db(cores) <= cfg.papr_target_db)
                    break;
                double pmean = 0.0;
                for (const auto &c : cores)
                    pmean += mean_power(c);
                pmean /= static_cast<double>(cores.size());
                double thr = std::pow(10.0, (cfg.papr_target_db - cfg.papr_clip_margin_db) / 20.0) *
                             std::sqrt(pmean);
                for (auto &c : cores)
                {
                    clip_to(c, thr);
                    fft::forward(c);
                    for (int b = 0; b < nfft; b++)
                        if (!keep[b])
                            c[b] = cd{0, 0};
                    fft::inverse(c);
                }
                double pnew = 0.0;
                for (const auto &c : cores)
                    pnew += mean_power(c);
                pnew /= static_cast<double>(cores.size());
                double g = 1.0 / std::sqrt(pnew);
                for (auto &c : cores)
                    for (cd &v : c)
                        v *= g;
            }
        }

        ComplexSignal assemble_wola(const OfdmConfig &cfg, const std::vector<std::vector<cd>> &cores)
        {
            const int nfft = cfg.fft_size();
            const int ncp = cfg.cp_len();
            const int stride = cfg.symbol_stride();
            const int w = cfg.wola_taper_samples;
            const int nsym = static_cast<int>(cores.size());

            std::vector<double> ramp_up(static_cast<std::size_t>(std::max(w, 0)));
            for (int i = 0; i < w; i++)
            {
                double s = std::sin(M_PI * (i + 0.5) / (2.0 * w));
                ramp_up[i] = s * s; // complementary with its reverse
            }

            ComplexSignal out;
            out.sample_rate_hz = cfg.sample_rate_hz;
            out.samples.assign(static_cast<std::size_t>(nsym) * stride + w, cd{0, 0});
            std::vector<cd> ext(static_cast<std::size_t>(stride + w));
            for (int s = 0; s < nsym; s++)
            {
                const auto &core = cores[s];
                for (int i = 0; i < ncp; i++)
                    ext[i] = core[nfft - ncp + i];
                for (int i = 0; i < nfft; i++)
                    ext[ncp + i] = core[i];
                for (int i = 0; i < w; i++)
                    ext[ncp + nfft + i] = core[i]; // cyclic suffix
                for (int i = 0; i < w; i++)
                {
                    ext[i] *= ramp_up[i];
                    ext[stride + w - 1 - i] *= ramp_up[i];
                }
                cd *dst = out.samples.data() + static_cast<std::size_t>(s) * stride;
                for (int i = 0; i < stride + w; i++)
                    dst[i] += ext[i];
            }
            out.samples.resize(static_cast<std::size_t>(nsym) * stride);
            normalize_power(out);
            return out;
        }
    }

    std::pair<ComplexSignal, SymbolGrid> generate_ofdm(const OfdmConfig &cfg)
    {
        cfg.validate();
        auto points = constellation_points(cfg.constellation);
        SymbolGrid grid;
        grid.num_symbols = cfg.num_symbols;
        grid.subcarrier_indices = cfg.active_subcarriers();
        grid.points.resize(static_cast<std::size_t>(cfg.num_symbols) *
                           grid.subcarrier_indices.size());
        Rng rng(cfg.rng_seed);
        for (cd &p : grid.points)
            p = points[rng.integer(points.size())];

        auto cores = synthesize_cores(cfg, grid);
        clip_and_filter_cores(cfg, cores);
        return {assemble_wola(cfg, cores), std::move(grid)};
    }

    ComplexSignal modulate_grid(const OfdmConfig &cfg, const SymbolGrid &grid)
    {
        cfg.validate();
        require(grid.subcarrier_indices == cfg.active_subcarriers(), Errc::invalid_argument,
                "modulate_grid: grid does not match the config subcarrier map");
        auto cores = synthesize_cores(cfg, grid);
        clip_and_filter_cores(cfg, cores);
        return assemble_wola(cfg, cores);
    }

    SymbolGrid ofdm_demodulate(const ComplexSignal &rx, const OfdmConfig &cfg, int num_symbols)
    {
        const int nfft = cfg.fft_size();
        const int ncp = cfg.cp_len();
        const int stride = cfg.symbol_stride();
        require(num_symbols >= 1, Errc::invalid_argument, "ofdm_demodulate: num_symbols < 1");
        require(rx.samples.size() >= static_cast<std::size_t>(num_symbols) * stride,
                Errc::invalid_argument, "ofdm_demodulate: signal shorter than the symbol grid");

        SymbolGrid out;
        out.num_symbols = num_symbols;
        out.subcarrier_indices = cfg.active_subcarriers();
        out.points.resize(static_cast<std::size_t>(num_symbols) * out.subcarrier_indices.size());
        const double scale = std::sqrt(static_cast<double>(out.subcarrier_indices.size())) /
                             static_cast<double>(nfft);
        std::vector<cd> buf(static_cast<std::size_t>(nfft));
        for (int s = 0; s < num_symbols; s++)
        {
            const cd *src = rx.samples.data() + static_cast<std::size_t>(s) * stride + ncp;
            std::copy(src, src + nfft, buf.begin());
            fft::forward(buf);
            for (std::size_t a = 0; a < out.subcarrier_indices.size(); a++)
            {
                int k = out.subcarrier_indices[a];
                out.points[static_cast<std::size_t>(s) * out.subcarrier_indices.size() + a] =
                    buf[k >= 0 ? k : k + nfft] * scale;
            }
        }
        return out;
    }

    ComplexSignal reduce_papr_clip_filter(const ComplexSignal &sig, double band_lo_hz,
                                          double band_hi_hz, double target_papr_db, int max_iters,
                                          std::vector<double> *papr_trace, double clip_margin_db)
    {
        sig.validate();
        require(!sig.samples.empty(), Errc::invalid_argument, "reduce_papr: empty signal");
        require(target_papr_db > 0, Errc::invalid_argument, "reduce_papr: target must be > 0 dB");
        require(max_iters >= 1, Errc::invalid_argument, "reduce_papr: max_iters must be >= 1");
        require(band_hi_hz > band_lo_hz, Errc::invalid_argument, "reduce_papr: inverted band");

        ComplexSignal out = sig;
        if (papr_trace)
            papr_trace->push_back(papr_db(out));
        if (papr_db(out) <= target_papr_db)
            return out; // nothing to do, bit-identical passthrough

        const std::size_t n = out.samples.size();
        const double df = out.sample_rate_hz / static_cast<double>(n);
        std::vector<bool> keep(n, false);
        for (std::size_t k = 0; k < n; k++)
        {
            double f = static_cast<double>(k) * df;
            if (f > out.sample_rate_hz / 2.0)
                f -= out.sample_rate_hz;
            keep[k] = (f >= band_lo_hz && f <= band_hi_hz);
        }

        for (int it = 0; it < max_iters; it++)
        {
            if (papr_db(out) <= target_papr_db)
                break;
            double thr = std::pow(10.0, (target_papr_db - clip_margin_db) / 20.0) *
                         std::sqrt(mean_power(out.samples));
            clip_to(out.samples, thr);
            fft::forward(out.samples);
            for (std::size_t k = 0; k < n; k++)
                if (!keep[k])
                    out.samples[k] = cd{0, 0};
            fft::inverse(out.samples);
            normalize_power(out);
            if (papr_trace)
                papr_trace->push_back(papr_db(out));
        }
        return out;
    }
}
