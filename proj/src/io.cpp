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

#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace beamdpd
{
    namespace
    {
        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.12g", v);
            return buf;
        }
    }

    void write_text_file(const std::string &path, const std::string &content)
    {
        std::ofstream f(path, std::ios::binary);
        require(f.good(), Errc::io, "cannot open for writing: " + path);
        f << content;
        require(f.good(), Errc::io, "write failed: " + path);
    }

    std::string read_text_file(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        require(f.good(), Errc::io, "cannot open: " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    nlohmann::json read_json_file(const std::string &path)
    {
        std::string text = read_text_file(path);
        try
        {
            return nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            fail(Errc::parse, path + ": " + e.what());
        }
    }

    void write_psd_csv(const std::string &path, const Psd &psd)
    {
        std::ostringstream out;
        out << "freq_hz,psd_db\n";
        for (std::size_t i = 0; i < psd.freq_hz.size(); i++)
            out << fmt(psd.freq_hz[i]) << ','
                << fmt(10.0 * std::log10(psd.density[i] + 1e-300)) << '\n';
        write_text_file(path, out.str());
    }

    void write_pattern_csv(const std::string &path, const EmissionPattern &pattern)
    {
        std::ostringstream out;
        out << "angle_deg,inband_db,oob_lower_db,oob_upper_db\n";
        for (std::size_t i = 0; i < pattern.angles_deg.size(); i++)
            out << fmt(pattern.angles_deg[i]) << ',' << fmt(pattern.inband_db[i]) << ','
                << fmt(pattern.oob_lower_db[i]) << ',' << fmt(pattern.oob_upper_db[i]) << '\n';
        write_text_file(path, out.str());
    }

    void write_trace_csv(const std::string &path, const std::vector<LearnTraceRow> &trace, bool raw)
    {
        std::ostringstream out;
        out << "iteration,coeff_index,re,im,error_power_db\n";
        for (const auto &row : trace)
        {
            const Eigen::VectorXcd &a = raw ? row.alpha_raw : row.alpha_ortho;
            for (Eigen::Index c = 0; c < a.size(); c++)
                out << row.iteration << ',' << c << ',' << fmt(a[c].real()) << ','
                    << fmt(a[c].imag()) << ',' << fmt(row.error_power_db) << '\n';
        }
        write_text_file(path, out.str());
    }

    void write_waveform(const std::string &path, const ComplexSignal &sig, std::uint64_t seed)
    {
        static_assert(sizeof(double) == 8);
        std::ofstream f(path, std::ios::binary);
        require(f.good(), Errc::io, "cannot open for writing: " + path);
        for (const cd &v : sig.samples)
        {
            double re = v.real(), im = v.imag();
            f.write(reinterpret_cast<const char *>(&re), 8); // little-endian host
            f.write(reinterpret_cast<const char *>(&im), 8);
        }
        require(f.good(), Errc::io, "write failed: " + path);
        nlohmann::json side;
        side["sample_rate_hz"] = sig.sample_rate_hz;
        side["seed"] = seed;
        side["num_samples"] = sig.samples.size();
        write_text_file(path + ".json", side.dump(2) + "\n");
    }

    ComplexSignal read_waveform(const std::string &path)
    {
        nlohmann::json side = read_json_file(path + ".json");
        ComplexSignal sig;
        try
        {
            sig.sample_rate_hz = side.at("sample_rate_hz").get<double>();
        }
        catch (const nlohmann::json::exception &e)
        {
            fail(Errc::parse, path + ".json: " + e.what());
        }
        std::ifstream f(path, std::ios::binary);
        require(f.good(), Errc::io, "cannot open: " + path);
        double re, im;
        while (f.read(reinterpret_cast<char *>(&re), 8) && f.read(reinterpret_cast<char *>(&im), 8))
            sig.samples.emplace_back(re, im);
        return sig;
    }
}
