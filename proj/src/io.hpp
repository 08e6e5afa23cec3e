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

#ifndef BEAMDPD_IO_HPP
#define BEAMDPD_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "array.hpp"
#include "dpd.hpp"
#include "signal.hpp"

namespace beamdpd
{
    void write_text_file(const std::string &path, const std::string &content);
    std::string read_text_file(const std::string &path);
    nlohmann::json read_json_file(const std::string &path);

    // freq_hz,psd_db rows
    void write_psd_csv(const std::string &path, const Psd &psd);

    // angle_deg,inband_db,oob_lower_db,oob_upper_db rows
    void write_pattern_csv(const std::string &path, const EmissionPattern &pattern);

    // iteration,coeff_index,re,im,error_power_db rows; raw selects the
    // raw-basis-domain coefficients, otherwise the orthogonalized ones
    void write_trace_csv(const std::string &path, const std::vector<LearnTraceRow> &trace,
                         bool raw);

    // interleaved little-endian float64 re/im pairs plus a JSON sidecar
    // (<path>.json) with sample_rate_hz and the generator seed
    void write_waveform(const std::string &path, const ComplexSignal &sig, std::uint64_t seed);
    ComplexSignal read_waveform(const std::string &path);
}

#endif
