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

#ifndef BEAMDPD_ERRORS_HPP
#define BEAMDPD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace beamdpd
{
    // Error categories map one-to-one onto the C API status codes.
    enum class Errc
    {
        invalid_argument = 1,
        parse = 2,
        validation = 3,
        runtime = 4,
        io = 5,
    };

    class Error : public std::runtime_error
    {
    public:
        Error(Errc code, const std::string &msg) : std::runtime_error(msg), code_(code) {}
        Errc code() const { return code_; }

    private:
        Errc code_;
    };

    [[noreturn]] inline void fail(Errc code, const std::string &msg)
    {
        throw Error(code, msg);
    }

    inline void require(bool cond, Errc code, const std::string &msg)
    {
        if (!cond)
            fail(code, msg);
    }
}

#endif
