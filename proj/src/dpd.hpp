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

#ifndef BEAMDPD_DPD_HPP
#define BEAMDPD_DPD_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "feedback.hpp"
#include "signal.hpp"

namespace beamdpd
{
    enum class Orthogonalization
    {
        cholesky,
        gram_schmidt,
    };

    struct DpdConfig
    {
        int order_q = 9;               // odd, >= 3
        std::vector<int> memory;       // per-branch N_q; empty -> 3 for all
        double learning_rate_mu = 0.05;
        int block_size_b = 100000;
        int num_iterations = 24;
        Orthogonalization orthogonalization = Orthogonalization::cholesky;

        // Linear response estimate per block: number of FIR taps of the
        // block-LS fit that forms the error signal. The same delayed-x
        // columns head the basis orthogonalization so every learnable
        // direction stays orthogonal to the linear subspace. 1 reduces to
        // the scalar gain estimate; 0 requires a fixed external gain.
        int linear_gain_taps = 4;

        // Final coefficients = mean of the last tail_average iterates, which
        // removes most of the steady-state block-to-block wander.
        int tail_average = 8;

        std::vector<int> branch_orders() const; // {3, 5, ..., Q}
        std::vector<int> branch_memory() const; // resolved N_q per branch
        int coeff_count() const;                // sum of (N_q + 1)
        void validate() const;
        std::vector<std::string> column_labels() const; // "u3[k-0]", ...
    };

    // Learned state: coefficients live in the orthogonalized domain; the
    // transform maps [delayed-x columns | SNL basis columns] onto the
    // orthonormal learning basis.
    struct DpdState
    {
        Eigen::VectorXcd coeffs_alpha;    // stacked alpha in ortho domain
        Eigen::MatrixXcd ortho_transform; // upper triangular T, S = U T
        int linear_cols = 0;              // leading delayed-x columns in T
        cd gain_estimate{0.0, 0.0};
        int iteration_index = 0;

        bool empty() const { return coeffs_alpha.size() == 0 || coeffs_alpha.isZero(0.0); }
        // effective raw-domain DPD coefficients alpha_{q,k} (basis rows only),
        // i.e. x~ = x + sum conj(alpha_raw) u + (linear compensation rows)
        Eigen::VectorXcd raw_coeffs() const;
    };

    // Column (q, k) holds |x(n-k)|^(q-1) x(n-k) for n in [start, start+len);
    // history before the signal start is zero.
    Eigen::MatrixXcd build_basis(const ComplexSignal &x, const DpdConfig &cfg, std::size_t start,
                                 std::size_t len);

    // Columns x(n-l), l = 0..taps-1, same indexing rules.
    Eigen::MatrixXcd build_linear_columns(const ComplexSignal &x, int taps, std::size_t start,
                                          std::size_t len);

    // Upper-triangular T with S = U T, S^H S / rows = I on the fitting block.
    // Rank deficiency is an error naming the offending column.
    Eigen::MatrixXcd fit_orthogonalizer(const Eigen::MatrixXcd &U,
                                        Orthogonalization method = Orthogonalization::cholesky,
                                        const std::vector<std::string> &labels = {});

    // G = (x^H z) / (x^H x), plain block least squares
    cd estimate_linear_gain(std::span<const cd> x, std::span<const cd> z);

    // Multi-tap LS fit of z on the delayed-x columns; returns the tap vector.
    Eigen::VectorXcd fit_linear_response(const Eigen::MatrixXcd &lin_cols,
                                         std::span<const cd> z);

    // e(n) = z(n) - G x(n)
    std::vector<cd> error_signal(std::span<const cd> z, cd gain, std::span<const cd> x);

    // Block-adaptive decorrelation step: alpha <- alpha - mu [e^H S]^T.
    // Callers wanting a dimensionless step pass mu / block_length.
    void decorrelation_update(DpdState &state, std::span<const cd> e_block,
                              const Eigen::MatrixXcd &s_block, double mu);

    // Main-path processing: x~ = x + injection(state). A default state passes
    // the signal through unchanged.
    ComplexSignal apply_dpd(const DpdState &state, const DpdConfig &cfg, const ComplexSignal &x);

    struct LearnOptions
    {
        enum class Observation
        {
            combined_feedback, // z from the coupler/anti-beamforming network
            single_pa,         // z = g_c PA_0(x~): reference method
        };
        Observation observation = Observation::combined_feedback;

        // re-learn on the first block every iteration (deterministic
        // fixed-point mode used by convergence studies and tests)
        bool repeat_first_block = false;

        // bypass per-block gain estimation with a known linear gain; requires
        // cfg.linear_gain_taps == 0
        std::optional<cd> fixed_linear_gain;
    };

    struct LearnTraceRow
    {
        int iteration = 0;
        double error_power_db = 0.0;
        Eigen::VectorXcd alpha_ortho;
        Eigen::VectorXcd alpha_raw;
    };

    struct LearnResult
    {
        DpdState state;
        std::vector<LearnTraceRow> trace;
        // max over columns of |<s, e>| / (|s||e|) on the last block with the
        // final coefficients
        double final_block_corr_max = 0.0;
    };

    // Block-adaptive decorrelation learning: per block, filter with the
    // current coefficients, drive the sub-array, observe, fit the linear
    // response, update. The orthogonalizer is fitted on block 0 and frozen.
    LearnResult learn(const SubArray &sub, const FeedbackNetwork &net, const DpdConfig &cfg,
                      const ComplexSignal &x, const LearnOptions &opts = {});
}

#endif
