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
//
// Experiment runner on top of the beamdpd C API.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beamdpd.h"

namespace
{
    struct ConfigDeleter
    {
        void operator()(beamdpd_config *c) const { beamdpd_config_free(c); }
    };
    struct ReportDeleter
    {
        void operator()(beamdpd_report *r) const { beamdpd_report_free(r); }
    };
    using ConfigPtr = std::unique_ptr<beamdpd_config, ConfigDeleter>;
    using ReportPtr = std::unique_ptr<beamdpd_report, ReportDeleter>;

    int fail_with(int rc, const char *what)
    {
        std::fprintf(stderr, "beamdpd: %s: %s\n", what, beamdpd_last_error());
        return rc;
    }

    ConfigPtr load_config(const std::string &path, int &rc)
    {
        beamdpd_config *raw = nullptr;
        rc = beamdpd_config_load(path.c_str(), &raw);
        return ConfigPtr(raw);
    }

    void print_metrics(const beamdpd_report *rep)
    {
        size_t n = beamdpd_report_scenario_count(rep);
        if (n == 0)
            return;
        std::printf("%-22s %10s %16s %16s\n", "scenario", "EVM [%]", "ACLR lower [dBc]",
                    "ACLR upper [dBc]");
        for (size_t i = 0; i < n; i++)
        {
            const char *name = nullptr;
            double evm = 0, lo = 0, hi = 0;
            beamdpd_report_scenario_name(rep, i, &name);
            beamdpd_report_metrics(rep, i, &evm, &lo, &hi);
            std::printf("%-22s %10.3f %16.2f %16.2f\n", name, evm, lo, hi);
        }
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"beamdpd - sub-array digital predistortion experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(beamdpd_version()));

    std::string config_path, out_dir;
    bool fast = false;
    std::vector<int> antennas;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App *cmd, bool with_fast)
    {
        cmd->add_option("config", config_path, "experiment configuration (JSON)")->required();
        if (with_fast)
            cmd->add_flag("--fast", fast, "CI-scale run (small learning blocks)");
        cmd->add_option("--out", out_dir, "output directory override");
        cmd->add_option("--seed", seed, "global seed override")->each([&](const std::string &)
                                                                      { seed_set = true; });
    };

    CLI::App *cmd_run = app.add_subcommand("run", "execute the configured scenarios");
    add_common(cmd_run, true);

    CLI::App *cmd_validate = app.add_subcommand("validate", "check a configuration file");
    cmd_validate->add_option("config", config_path, "experiment configuration (JSON)")->required();

    CLI::App *cmd_pattern = app.add_subcommand("pattern", "spatial emission patterns");
    add_common(cmd_pattern, true);
    cmd_pattern->add_option("--antennas", antennas, "antenna counts, e.g. --antennas 16 32")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    int rc = BEAMDPD_OK;
    ConfigPtr cfg = load_config(config_path, rc);
    if (rc != BEAMDPD_OK)
        return fail_with(rc, "config");

    if (!out_dir.empty())
        beamdpd_config_set_output_dir(cfg.get(), out_dir.c_str());
    if (seed_set)
        beamdpd_config_set_seed(cfg.get(), seed);
    if (fast)
        beamdpd_config_set_fast(cfg.get(), 1);

    if (app.got_subcommand(cmd_validate))
    {
        char **diags = nullptr;
        size_t count = 0;
        rc = beamdpd_config_validate(cfg.get(), &diags, &count);
        if (rc != BEAMDPD_OK)
            return fail_with(rc, "validate");
        for (size_t i = 0; i < count; i++)
            std::printf("diagnostic: %s\n", diags[i]);
        beamdpd_strings_free(diags, count);
        if (count == 0)
        {
            std::printf("config OK\n");
            return 0;
        }
        return 1;
    }

    if (app.got_subcommand(cmd_pattern))
    {
        if (!antennas.empty())
        {
            std::vector<int32_t> m(antennas.begin(), antennas.end());
            beamdpd_config_set_pattern_antennas(cfg.get(), m.data(), m.size());
        }
        beamdpd_report *raw = nullptr;
        rc = beamdpd_run_patterns(cfg.get(), &raw);
        ReportPtr rep(raw);
        if (rc != BEAMDPD_OK)
            return fail_with(rc, "pattern");
        std::printf("pattern CSV files written\n");
        return 0;
    }

    beamdpd_report *raw = nullptr;
    rc = beamdpd_run(cfg.get(), &raw);
    ReportPtr rep(raw);
    if (rc != BEAMDPD_OK)
        return fail_with(rc, "run");
    print_metrics(rep.get());
    return 0;
}
