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

#include "oracle.hpp"

#include <cmath>

#include "errors.hpp"

namespace beamdpd
{
    void ThirdOrderScenario::validate() const
    {
        require(!f1.empty() && f1.size() == f3.size(), Errc::validation,
                "third-order scenario: f1/f3 must be non-empty and equal-sized");
        require(deviations.empty() || deviations.size() == f1.size(), Errc::validation,
                "third-order scenario: deviation count mismatch");
        require(e86 > 0, Errc::validation, "third-order scenario: E86 must be positive");
        cd s{0, 0};
        for (const cd &v : f1)
            s += v;
        require(std::abs(s) > 0, Errc::validation, "third-order scenario: sum of f1 is zero");
    }

    double moment_ratio(const ComplexSignal &x)
    {
        require(!x.samples.empty(), Errc::invalid_argument, "moment_ratio: empty signal");
        double m6 = 0.0, m8 = 0.0;
        for (const cd &v : x.samples)
        {
            double a2 = std::norm(v);
            double a6 = a2 * a2 * a2;
            m6 += a6;
            m8 += a6 * a2;
        }
        require(m6 > 0, Errc::invalid_argument, "moment_ratio: all-zero signal");
        return m8 / m6;
    }

    namespace
    {
        cd closed_form(cd f31, double e86)
        {
            cd num = -std::conj(f31) * (1.0 + f31 * e86);
            cd den = 3.0 * std::norm(f31) * e86 * e86 + 2.0 * e86 * (f31 + std::conj(f31)) + 1.0;
            require(std::abs(den) > 1e-9, Errc::runtime,
                    "alpha3_opt: singular scenario (vanishing denominator)");
            return num / den;
        }
    }

    cd alpha3_opt(const ThirdOrderScenario &scn)
    {
        scn.validate();
        cd s1{0, 0}, s3{0, 0};
        for (std::size_t m = 0; m < scn.f1.size(); m++)
        {
            s1 += scn.f1[m];
            s3 += scn.f3[m];
        }
        return closed_form(s3 / s1, scn.e86);
    }

    cd alpha3_opt_mismatched(const ThirdOrderScenario &scn)
    {
        scn.validate();
        cd s1{0, 0}, s3{0, 0};
        for (std::size_t m = 0; m < scn.f1.size(); m++)
        {
            cd w = 1.0 + (scn.deviations.empty() ? cd{0, 0} : scn.deviations[m]);
            s1 += scn.f1[m] * w;
            s3 += scn.f3[m] * w;
        }
        require(std::abs(s1) > 0, Errc::runtime,
                "alpha3_opt_mismatched: sum of f1 (1 + eps) is zero");
        return closed_form(s3 / s1, scn.e86);
    }
}
