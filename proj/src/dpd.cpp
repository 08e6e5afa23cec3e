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

#include "dpd.hpp"

#include <cmath>

#include "errors.hpp"

namespace beamdpd
{
    std::vector<int> DpdConfig::branch_orders() const
    {
        std::vector<int> orders;
        for (int q = 3; q <= order_q; q += 2)
            orders.push_back(q);
        return orders;
    }

    std::vector<int> DpdConfig::branch_memory() const
    {
        auto orders = branch_orders();
        if (memory.empty())
            return std::vector<int>(orders.size(), 3);
        return memory;
    }

    int DpdConfig::coeff_count() const
    {
        int c = 0;
        for (int nq : branch_memory())
            c += nq + 1;
        return c;
    }

    void DpdConfig::validate() const
    {
        require(order_q >= 3 && order_q % 2 == 1, Errc::validation,
                "dpd: order_q must be an odd integer >= 3");
        auto orders = branch_orders();
        require(memory.empty() || memory.size() == orders.size(), Errc::validation,
                "dpd: memory list must have one entry per branch");
        for (int nq : branch_memory())
            require(nq >= 0, Errc::validation, "dpd: memory orders must be >= 0");
        require(learning_rate_mu > 0, Errc::validation, "dpd: learning_rate_mu must be > 0");
        require(num_iterations >= 1, Errc::validation, "dpd: num_iterations must be >= 1");
        require(block_size_b >= coeff_count(), Errc::validation,
                "dpd: block_size_b must be at least the coefficient count");
        require(linear_gain_taps >= 0, Errc::validation, "dpd: linear_gain_taps must be >= 0");
        require(tail_average >= 1, Errc::validation, "dpd: tail_average must be >= 1");
    }

    std::vector<std::string> DpdConfig::column_labels() const
    {
        std::vector<std::string> labels;
        auto orders = branch_orders();
        auto mem = branch_memory();
        for (std::size_t b = 0; b < orders.size(); b++)
            for (int k = 0; k <= mem[b]; k++)
                labels.push_back("u" + std::to_string(orders[b]) + "[n-" + std::to_string(k) + "]");
        return labels;
    }

    Eigen::VectorXcd DpdState::raw_coeffs() const
    {
        if (coeffs_alpha.size() == 0)
            return {};
        Eigen::VectorXcd aug = Eigen::VectorXcd::Zero(ortho_transform.rows());
        aug.tail(coeffs_alpha.size()) = coeffs_alpha.conjugate();
        Eigen::VectorXcd beta = ortho_transform * aug;
        return beta.tail(coeffs_alpha.size()).conjugate();
    }

    Eigen::MatrixXcd build_basis(const ComplexSignal &x, const DpdConfig &cfg, std::size_t start,
                                 std::size_t len)
    {
        cfg.validate();
        require(start + len <= x.samples.size(), Errc::invalid_argument,
                "build_basis: block exceeds the signal");
        auto orders = cfg.branch_orders();
        auto mem = cfg.branch_memory();

        Eigen::MatrixXcd U(len, cfg.coeff_count());
        std::vector<cd> u(x.samples.begin(), x.samples.end());
        int built = 1;
        int col = 0;
        for (std::size_t b = 0; b < orders.size(); b++)
        {
            while (built < orders[b])
            {
                for (std::size_t i = 0; i < u.size(); i++)
                    u[i] *= std::norm(x.samples[i]);
                built += 2;
            }
            for (int k = 0; k <= mem[b]; k++, col++)
                for (std::size_t r = 0; r < len; r++)
                {
                    std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(start + r) - k;
                    U(r, col) = idx >= 0 ? u[idx] : cd{0, 0};
                }
        }
        return U;
    }

    Eigen::MatrixXcd build_linear_columns(const ComplexSignal &x, int taps, std::size_t start,
                                          std::size_t len)
    {
        require(taps >= 0, Errc::invalid_argument, "build_linear_columns: taps must be >= 0");
        require(start + len <= x.samples.size(), Errc::invalid_argument,
                "build_linear_columns: block exceeds the signal");
        Eigen::MatrixXcd L(len, taps);
        for (int l = 0; l < taps; l++)
            for (std::size_t r = 0; r < len; r++)
            {
                std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(start + r) - l;
                L(r, l) = idx >= 0 ? x.samples[idx] : cd{0, 0};
            }
        return L;
    }

    Eigen::MatrixXcd fit_orthogonalizer(const Eigen::MatrixXcd &U, Orthogonalization method,
                                        const std::vector<std::string> &labels)
    {
        const Eigen::Index cols = U.cols();
        require(cols >= 1, Errc::invalid_argument, "fit_orthogonalizer: empty basis");
        require(U.rows() >= cols, Errc::invalid_argument,
                "fit_orthogonalizer: fewer rows than columns");
        const double rows = static_cast<double>(U.rows());
        auto column_name = [&](Eigen::Index j)
        {
            return j < static_cast<Eigen::Index>(labels.size()) ? labels[j]
                                                                : "column " + std::to_string(j);
        };

        if (method == Orthogonalization::gram_schmidt)
        {
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(U);
            Eigen::MatrixXcd R =
                qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
            for (Eigen::Index j = 0; j < cols; j++)
                require(std::abs(R(j, j)) > 1e-10 * U.col(j).norm() + 1e-300, Errc::runtime,
                        "fit_orthogonalizer: rank-deficient basis at " + column_name(j));
            Eigen::MatrixXcd T = R.triangularView<Eigen::Upper>().solve(
                Eigen::MatrixXcd::Identity(cols, cols));
            return T * std::sqrt(rows);
        }

        // Cholesky of the sample covariance; done by hand so the failing
        // column can be reported
        Eigen::MatrixXcd G = (U.adjoint() * U) / rows;
        Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(cols, cols);
        for (Eigen::Index j = 0; j < cols; j++)
        {
            double d = G(j, j).real();
            for (Eigen::Index k = 0; k < j; k++)
                d -= std::norm(L(j, k));
            require(d > 1e-10 * std::max(G(j, j).real(), 1e-300), Errc::runtime,
                    "fit_orthogonalizer: rank-deficient basis at " + column_name(j));
            L(j, j) = std::sqrt(d);
            for (Eigen::Index i = j + 1; i < cols; i++)
            {
                cd acc = G(i, j);
                for (Eigen::Index k = 0; k < j; k++)
                    acc -= L(i, k) * std::conj(L(j, k));
                L(i, j) = acc / L(j, j).real();
            }
        }
        return L.adjoint().triangularView<Eigen::Upper>().solve(
            Eigen::MatrixXcd::Identity(cols, cols));
    }

    cd estimate_linear_gain(std::span<const cd> x, std::span<const cd> z)
    {
        require(x.size() == z.size() && !x.empty(), Errc::invalid_argument,
                "estimate_linear_gain: length mismatch or empty blocks");
        cd num{0, 0};
        double den = 0.0;
        for (std::size_t i = 0; i < x.size(); i++)
        {
            num += std::conj(x[i]) * z[i];
            den += std::norm(x[i]);
        }
        require(den > 0, Errc::invalid_argument, "estimate_linear_gain: all-zero reference");
        return num / den;
    }

    Eigen::VectorXcd fit_linear_response(const Eigen::MatrixXcd &lin_cols, std::span<const cd> z)
    {
        require(lin_cols.rows() == static_cast<Eigen::Index>(z.size()), Errc::invalid_argument,
                "fit_linear_response: row count mismatch");
        require(lin_cols.cols() >= 1, Errc::invalid_argument, "fit_linear_response: no columns");
        Eigen::Map<const Eigen::VectorXcd> zv(z.data(), static_cast<Eigen::Index>(z.size()));
        Eigen::MatrixXcd A = lin_cols.adjoint() * lin_cols;
        Eigen::VectorXcd b = lin_cols.adjoint() * zv;
        return A.ldlt().solve(b);
    }

    std::vector<cd> error_signal(std::span<const cd> z, cd gain, std::span<const cd> x)
    {
        require(z.size() == x.size(), Errc::invalid_argument, "error_signal: length mismatch");
        std::vector<cd> e(z.size());
        for (std::size_t i = 0; i < z.size(); i++)
            e[i] = z[i] - gain * x[i];
        return e;
    }

    void decorrelation_update(DpdState &state, std::span<const cd> e_block,
                              const Eigen::MatrixXcd &s_block, double mu)
    {
        require(s_block.rows() == static_cast<Eigen::Index>(e_block.size()), Errc::invalid_argument,
                "decorrelation_update: block length mismatch");
        require(s_block.cols() == state.coeffs_alpha.size(), Errc::invalid_argument,
                "decorrelation_update: coefficient count mismatch");
        Eigen::Map<const Eigen::VectorXcd> e(e_block.data(),
                                             static_cast<Eigen::Index>(e_block.size()));
        // alpha(i+1) = alpha(i) - mu [e^H S]^T
        state.coeffs_alpha -= mu * (s_block.transpose() * e.conjugate());
        state.iteration_index++;
    }

    namespace
    {
        Eigen::VectorXcd augmented_conj_alpha(const DpdState &state)
        {
            Eigen::VectorXcd aug = Eigen::VectorXcd::Zero(state.ortho_transform.rows());
            aug.tail(state.coeffs_alpha.size()) = state.coeffs_alpha.conjugate();
            return aug;
        }

        // injection for rows [start, start+len) of x given the learned state
        Eigen::VectorXcd injection_block(const DpdState &state, const DpdConfig &cfg,
                                         const ComplexSignal &x, std::size_t start, std::size_t len)
        {
            Eigen::MatrixXcd cols(len, state.ortho_transform.rows());
            if (state.linear_cols > 0)
                cols.leftCols(state.linear_cols) =
                    build_linear_columns(x, state.linear_cols, start, len);
            cols.rightCols(cfg.coeff_count()) = build_basis(x, cfg, start, len);
            return cols * (state.ortho_transform * augmented_conj_alpha(state));
        }
    }

    ComplexSignal apply_dpd(const DpdState &state, const DpdConfig &cfg, const ComplexSignal &x)
    {
        cfg.validate();
        ComplexSignal out = x;
        if (state.empty())
            return out;
        require(state.ortho_transform.rows() == state.linear_cols + cfg.coeff_count(),
                Errc::invalid_argument, "apply_dpd: state does not match the config layout");
        require(state.coeffs_alpha.size() == cfg.coeff_count(), Errc::invalid_argument,
                "apply_dpd: coefficient count mismatch");

        // blockwise to keep the basis matrices small
        const std::size_t chunk = 1 << 18;
        for (std::size_t start = 0; start < x.samples.size(); start += chunk)
        {
            std::size_t len = std::min(chunk, x.samples.size() - start);
            Eigen::VectorXcd inj = injection_block(state, cfg, x, start, len);
            for (std::size_t i = 0; i < len; i++)
                out.samples[start + i] += inj[i];
        }
        return out;
    }

    LearnResult learn(const SubArray &sub, const FeedbackNetwork &net, const DpdConfig &cfg,
                      const ComplexSignal &x, const LearnOptions &opts)
    {
        cfg.validate();
        sub.validate();
        net.validate(sub.size());
        const std::size_t B = static_cast<std::size_t>(cfg.block_size_b);
        const int iters = cfg.num_iterations;
        const std::size_t needed = opts.repeat_first_block ? B : B * iters;
        require(x.samples.size() >= needed, Errc::invalid_argument,
                "learn: signal shorter than num_iterations blocks of block_size_b samples");
        if (cfg.linear_gain_taps == 0)
            require(opts.fixed_linear_gain.has_value(), Errc::invalid_argument,
                    "learn: linear_gain_taps == 0 requires a fixed linear gain");

        const int taps = cfg.linear_gain_taps;
        const int ncoef = cfg.coeff_count();

        // history window so PA memory and basis delays see real samples
        int pad = 0;
        for (const auto &m : sub.models)
            pad = std::max(pad, m.memory_n);
        for (int nq : cfg.branch_memory())
            pad = std::max(pad, nq);
        pad += taps;

        // orthogonalizer fitted on block 0, frozen afterwards
        auto labels = cfg.column_labels();
        {
            std::vector<std::string> lin_labels;
            for (int l = 0; l < taps; l++)
                lin_labels.push_back("x[n-" + std::to_string(l) + "]");
            labels.insert(labels.begin(), lin_labels.begin(), lin_labels.end());
        }
        Eigen::MatrixXcd U0(B, taps + ncoef);
        if (taps > 0)
            U0.leftCols(taps) = build_linear_columns(x, taps, 0, B);
        U0.rightCols(ncoef) = build_basis(x, cfg, 0, B);
        Eigen::MatrixXcd T = fit_orthogonalizer(U0, cfg.orthogonalization, labels);

        LearnResult res;
        res.state.coeffs_alpha = Eigen::VectorXcd::Zero(ncoef);
        res.state.ortho_transform = T;
        res.state.linear_cols = taps;

        ComplexSignal xt;
        xt.sample_rate_hz = x.sample_rate_hz;

        auto drive = [&](const ComplexSignal &input) -> ComplexSignal
        {
            if (opts.observation == LearnOptions::Observation::single_pa)
            {
                ComplexSignal z = apply_ph(sub.models[0], input);
                for (cd &v : z.samples)
                    v *= net.coupling_gc;
                return z;
            }
            return observe(sub, net, input);
        };

        std::vector<Eigen::VectorXcd> tail;
        const int tail_n = std::min(cfg.tail_average, iters);
        double prev_norm = 0.0;

        for (int i = 0; i < iters; i++)
        {
            const std::size_t st = opts.repeat_first_block ? 0 : static_cast<std::size_t>(i) * B;
            const std::size_t lo = st >= static_cast<std::size_t>(pad) ? st - pad : 0;
            const std::size_t ext = st - lo + B;

            Eigen::MatrixXcd cols(ext, taps + ncoef);
            if (taps > 0)
                cols.leftCols(taps) = build_linear_columns(x, taps, lo, ext);
            cols.rightCols(ncoef) = build_basis(x, cfg, lo, ext);
            Eigen::MatrixXcd S = cols * T;

            // predistort the extended window, then drop the warm-up rows
            Eigen::VectorXcd inj = S * augmented_conj_alpha(res.state);
            xt.samples.assign(x.samples.begin() + lo, x.samples.begin() + (st + B));
            for (std::size_t r = 0; r < ext; r++)
                xt.samples[r] += inj[r];

            ComplexSignal z_ext = drive(xt);
            std::span<const cd> z(z_ext.samples.data() + (st - lo), B);
            std::span<const cd> xb(x.samples.data() + st, B);

            std::vector<cd> e;
            if (opts.fixed_linear_gain)
            {
                res.state.gain_estimate = *opts.fixed_linear_gain;
                e = error_signal(z, res.state.gain_estimate, xb);
            }
            else
            {
                Eigen::MatrixXcd lin = cols.block(st - lo, 0, B, taps);
                Eigen::VectorXcd g = fit_linear_response(lin, z);
                res.state.gain_estimate = g[0];
                Eigen::VectorXcd zf =
                    Eigen::Map<const Eigen::VectorXcd>(z.data(), static_cast<Eigen::Index>(B)) -
                    lin * g;
                e.assign(zf.data(), zf.data() + B);
            }

            Eigen::MatrixXcd s_nl = S.block(st - lo, taps, B, ncoef);
            decorrelation_update(res.state, e, s_nl, cfg.learning_rate_mu / static_cast<double>(B));

            double nrm = res.state.coeffs_alpha.norm();
            require(i == 0 || prev_norm <= 1e-9 || nrm <= 10.0 * prev_norm, Errc::runtime,
                    "learn: diverging coefficients at iteration " + std::to_string(i) +
                        " (|alpha| " + std::to_string(prev_norm) + " -> " + std::to_string(nrm) +
                        "); reduce the learning rate");
            prev_norm = nrm;

            LearnTraceRow row;
            row.iteration = i;
            row.error_power_db = 10.0 * std::log10(mean_power(e) + 1e-300);
            row.alpha_ortho = res.state.coeffs_alpha;
            row.alpha_raw = res.state.raw_coeffs();
            res.trace.push_back(std::move(row));

            if (i >= iters - tail_n)
                tail.push_back(res.state.coeffs_alpha);
        }

        // Polyak tail average as the final operating point
        Eigen::VectorXcd avg = Eigen::VectorXcd::Zero(ncoef);
        for (const auto &a : tail)
            avg += a;
        res.state.coeffs_alpha = avg / static_cast<double>(tail.size());

        // decorrelation figure on the final block with the final coefficients
        {
            const std::size_t st =
                opts.repeat_first_block ? 0 : static_cast<std::size_t>(iters - 1) * B;
            const std::size_t lo = st >= static_cast<std::size_t>(pad) ? st - pad : 0;
            const std::size_t ext = st - lo + B;
            Eigen::MatrixXcd cols(ext, taps + ncoef);
            if (taps > 0)
                cols.leftCols(taps) = build_linear_columns(x, taps, lo, ext);
            cols.rightCols(ncoef) = build_basis(x, cfg, lo, ext);
            Eigen::MatrixXcd S = cols * T;
            Eigen::VectorXcd inj = S * augmented_conj_alpha(res.state);
            xt.samples.assign(x.samples.begin() + lo, x.samples.begin() + (st + B));
            for (std::size_t r = 0; r < ext; r++)
                xt.samples[r] += inj[r];
            ComplexSignal z_ext = drive(xt);
            std::span<const cd> z(z_ext.samples.data() + (st - lo), B);
            std::span<const cd> xb(x.samples.data() + st, B);
            Eigen::VectorXcd ef;
            if (opts.fixed_linear_gain)
            {
                auto ev = error_signal(z, *opts.fixed_linear_gain, xb);
                ef = Eigen::Map<const Eigen::VectorXcd>(ev.data(), static_cast<Eigen::Index>(B));
            }
            else
            {
                Eigen::MatrixXcd lin = cols.block(st - lo, 0, B, taps);
                Eigen::VectorXcd g = fit_linear_response(lin, z);
                ef = Eigen::Map<const Eigen::VectorXcd>(z.data(), static_cast<Eigen::Index>(B)) -
                     lin * g;
            }
            Eigen::MatrixXcd s_nl = S.block(st - lo, taps, B, ncoef);
            double emax = 0.0;
            double en = ef.norm();
            for (int c = 0; c < ncoef; c++)
            {
                double v = std::abs(s_nl.col(c).dot(ef)) / (s_nl.col(c).norm() * en + 1e-300);
                emax = std::max(emax, v);
            }
            res.final_block_corr_max = emax;
        }
        return res;
    }
}
