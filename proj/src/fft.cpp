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

#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "errors.hpp"

namespace beamdpd::fft
{
    namespace
    {
        struct Plan
        {
            fftw_plan plan = nullptr;
            fftw_complex *buf = nullptr;
            std::size_t n = 0;

            ~Plan()
            {
                if (plan)
                    fftw_destroy_plan(plan);
                if (buf)
                    fftw_free(buf);
            }
        };

        std::mutex planner_mutex;
        std::map<std::pair<std::size_t, int>, std::unique_ptr<Plan>> plan_cache;

        Plan &get_plan(std::size_t n, int sign)
        {
            std::lock_guard<std::mutex> lock(planner_mutex);
            auto key = std::make_pair(n, sign);
            auto it = plan_cache.find(key);
            if (it != plan_cache.end())
                return *it->second;
            auto p = std::make_unique<Plan>();
            p->n = n;
            p->buf = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n));
            require(p->buf != nullptr, Errc::runtime, "fftw_malloc failed");
            p->plan = fftw_plan_dft_1d(static_cast<int>(n), p->buf, p->buf, sign, FFTW_ESTIMATE);
            require(p->plan != nullptr, Errc::runtime, "fftw plan creation failed");
            return *plan_cache.emplace(key, std::move(p)).first->second;
        }

        std::mutex exec_mutex; // plans share their buffer; serialize execution

        void transform(std::vector<std::complex<double>> &data, int sign)
        {
            if (data.empty())
                return;
            std::lock_guard<std::mutex> lock(exec_mutex);
            Plan &p = get_plan(data.size(), sign);
            std::memcpy(p.buf, data.data(), sizeof(fftw_complex) * data.size());
            fftw_execute(p.plan);
            std::memcpy(data.data(), p.buf, sizeof(fftw_complex) * data.size());
        }
    }

    void forward(std::vector<std::complex<double>> &data)
    {
        transform(data, FFTW_FORWARD);
    }

    void inverse(std::vector<std::complex<double>> &data)
    {
        transform(data, FFTW_BACKWARD);
        double s = 1.0 / static_cast<double>(data.size());
        for (auto &v : data)
            v *= s;
    }
}
