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

#include "beamdpd.h"

#include <cstring>
#include <string>

#include "errors.hpp"
#include "experiment.hpp"
#include "io.hpp"

using namespace beamdpd;

struct beamdpd_config
{
    ExperimentConfig cfg;
    bool fast = false;
};

struct beamdpd_report
{
    RunReport rep;
    std::string json_text;
};

namespace
{
    thread_local std::string g_last_error;

    int set_error(const Error &e)
    {
        g_last_error = e.what();
        return static_cast<int>(e.code());
    }

    int set_error(const std::exception &e)
    {
        g_last_error = e.what();
        return BEAMDPD_ERR_RUNTIME;
    }

    template <typename Fn>
    int guarded(Fn &&fn)
    {
        try
        {
            g_last_error.clear();
            fn();
            return BEAMDPD_OK;
        }
        catch (const Error &e)
        {
            return set_error(e);
        }
        catch (const std::exception &e)
        {
            return set_error(e);
        }
    }

    int require_arg(bool ok, const char *msg)
    {
        if (!ok)
        {
            g_last_error = msg;
            return BEAMDPD_ERR_INVALID_ARGUMENT;
        }
        return BEAMDPD_OK;
    }
}

extern "C"
{
    const char *beamdpd_version(void)
    {
        return "0.1.0";
    }

    const char *beamdpd_last_error(void)
    {
        return g_last_error.c_str();
    }

    int beamdpd_config_create_default(beamdpd_config **out)
    {
        if (int rc = require_arg(out != nullptr, "out is null"))
            return rc;
        return guarded([&] { *out = new beamdpd_config(); });
    }

    int beamdpd_config_load(const char *path, beamdpd_config **out)
    {
        if (int rc = require_arg(path != nullptr && out != nullptr, "path/out is null"))
            return rc;
        return guarded(
            [&]
            {
                auto cfg = std::make_unique<beamdpd_config>();
                cfg->cfg = ExperimentConfig::from_json(read_json_file(path));
                *out = cfg.release();
            });
    }

    void beamdpd_config_free(beamdpd_config *cfg)
    {
        delete cfg;
    }

    int beamdpd_config_set_fast(beamdpd_config *cfg, int enable)
    {
        if (int rc = require_arg(cfg != nullptr, "cfg is null"))
            return rc;
        cfg->fast = enable != 0;
        return BEAMDPD_OK;
    }

    int beamdpd_config_set_output_dir(beamdpd_config *cfg, const char *dir)
    {
        if (int rc = require_arg(cfg != nullptr && dir != nullptr, "cfg/dir is null"))
            return rc;
        cfg->cfg.output_dir = dir;
        return BEAMDPD_OK;
    }

    int beamdpd_config_set_seed(beamdpd_config *cfg, uint64_t seed)
    {
        if (int rc = require_arg(cfg != nullptr, "cfg is null"))
            return rc;
        cfg->cfg.seed = seed;
        return BEAMDPD_OK;
    }

    int beamdpd_config_set_pattern_antennas(beamdpd_config *cfg, const int32_t *m_list, size_t count)
    {
        if (int rc = require_arg(cfg != nullptr && (m_list != nullptr || count == 0),
                                 "cfg/m_list is null"))
            return rc;
        cfg->cfg.pattern.enabled = count > 0;
        cfg->cfg.pattern.antennas.assign(m_list, m_list + count);
        return BEAMDPD_OK;
    }

    int beamdpd_config_validate(const beamdpd_config *cfg, char ***diagnostics, size_t *count)
    {
        if (int rc = require_arg(cfg != nullptr && diagnostics != nullptr && count != nullptr,
                                 "cfg/diagnostics/count is null"))
            return rc;
        return guarded(
            [&]
            {
                ExperimentConfig c = cfg->cfg;
                if (cfg->fast)
                    c.apply_fast();
                auto diags = c.validate();
                char **arr = new char *[diags.size() + 1];
                for (std::size_t i = 0; i < diags.size(); i++)
                {
                    arr[i] = new char[diags[i].size() + 1];
                    std::memcpy(arr[i], diags[i].c_str(), diags[i].size() + 1);
                }
                arr[diags.size()] = nullptr;
                *diagnostics = arr;
                *count = diags.size();
            });
    }

    void beamdpd_strings_free(char **strings, size_t count)
    {
        if (!strings)
            return;
        for (size_t i = 0; i < count; i++)
            delete[] strings[i];
        delete[] strings;
    }

    static int run_common(const beamdpd_config *cfg, beamdpd_report **out, bool patterns_only)
    {
        if (int rc = require_arg(cfg != nullptr && out != nullptr, "cfg/out is null"))
            return rc;
        return guarded(
            [&]
            {
                ExperimentConfig c = cfg->cfg;
                if (cfg->fast)
                    c.apply_fast();
                auto rep = std::make_unique<beamdpd_report>();
                rep->rep = patterns_only ? run_patterns(c) : run(c);
                rep->json_text = rep->rep.report.dump(2);
                *out = rep.release();
            });
    }

    int beamdpd_run(const beamdpd_config *cfg, beamdpd_report **out)
    {
        return run_common(cfg, out, false);
    }

    int beamdpd_run_patterns(const beamdpd_config *cfg, beamdpd_report **out)
    {
        return run_common(cfg, out, true);
    }

    void beamdpd_report_free(beamdpd_report *report)
    {
        delete report;
    }

    size_t beamdpd_report_scenario_count(const beamdpd_report *report)
    {
        return report ? report->rep.results.size() : 0;
    }

    int beamdpd_report_scenario_name(const beamdpd_report *report, size_t index, const char **name)
    {
        if (int rc = require_arg(report != nullptr && name != nullptr, "report/name is null"))
            return rc;
        if (int rc = require_arg(index < report->rep.results.size(), "index out of range"))
            return rc;
        *name = report->rep.results[index].scenario.c_str();
        return BEAMDPD_OK;
    }

    int beamdpd_report_metrics(const beamdpd_report *report, size_t index, double *evm_pct,
                               double *aclr_lower_dbc, double *aclr_upper_dbc)
    {
        if (int rc = require_arg(report != nullptr, "report is null"))
            return rc;
        if (int rc = require_arg(index < report->rep.results.size(), "index out of range"))
            return rc;
        const MetricsReport &m = report->rep.results[index].metrics;
        if (evm_pct)
            *evm_pct = m.evm_pct;
        if (aclr_lower_dbc)
            *aclr_lower_dbc = m.aclr_lower_dbc;
        if (aclr_upper_dbc)
            *aclr_upper_dbc = m.aclr_upper_dbc;
        return BEAMDPD_OK;
    }

    int beamdpd_report_json(const beamdpd_report *report, const char **json_text)
    {
        if (int rc = require_arg(report != nullptr && json_text != nullptr,
                                 "report/json_text is null"))
            return rc;
        *json_text = report->json_text.c_str();
        return BEAMDPD_OK;
    }
}
