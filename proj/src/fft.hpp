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

#ifndef BEAMDPD_FFT_HPP
#define BEAMDPD_FFT_HPP

#include <complex>
#include <vector>

namespace beamdpd::fft
{
    // In-place complex DFT, numpy conventions: forward unscaled, inverse
    // scaled by 1/N. Backed by FFTW with cached FFTW_ESTIMATE plans
    // (deterministic plan choice, so results are run-to-run identical).
    void forward(std::vector<std::complex<double>> &data);
    void inverse(std::vector<std::complex<double>> &data);
}

#endif
