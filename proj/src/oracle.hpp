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

#ifndef BEAMDPD_ORACLE_HPP
#define BEAMDPD_ORACLE_HPP

#include <vector>

#include "signal.hpp"

namespace beamdpd
{
    // Closed-form third-order memoryless analysis, used as an independent
    // reference for the adaptive learner. The formulas drop the |x|^10 and
    // |x|^12 correlation terms, so they carry a small bias that grows with
    // |f3/f1|.
    struct ThirdOrderScenario
    {
        std::vector<cd> f1;         // per-branch linear gains
        std::vector<cd> f3;         // per-branch third-order gains
        std::vector<cd> deviations; // eps_m; empty = no mismatch
        double e86 = 0.0;           // E|x|^8 / E|x|^6 of the driving signal
        cd g_c{1.0, 0.0};

        void validate() const;
    };

    // mean(|x|^8) / mean(|x|^6)
    double moment_ratio(const ComplexSignal &x);

    // alpha_opt = -F31* (1 + F31 E86) / (3 |F31|^2 E86^2 + 2 E86 (F31 + F31*) + 1)
    // with F31 = sum f3 / sum f1 (mismatch-free form).
    cd alpha3_opt(const ThirdOrderScenario &scn);

    // Same closed form with F31 replaced by
    // sum f3 (1 + eps) / sum f1 (1 + eps).
    cd alpha3_opt_mismatched(const ThirdOrderScenario &scn);
}

#endif
