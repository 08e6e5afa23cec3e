/* SPDX-License-Identifier: Apache-2.0
 *
 * beamdpd - baseband simulator for sub-array digital predistortion
 * Copyright (C) 2026 the beamdpd developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the beamdpd shared library. All entry points return a
 * status code (BEAMDPD_OK on success); beamdpd_last_error() describes the
 * most recent failure on the calling thread. Objects are opaque handles
 * released with their matching _free call.
 */

#ifndef BEAMDPD_H
#define BEAMDPD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C"
{
#endif

#define BEAMDPD_OK 0
#define BEAMDPD_ERR_INVALID_ARGUMENT 1
#define BEAMDPD_ERR_PARSE 2
#define BEAMDPD_ERR_VALIDATION 3
#define BEAMDPD_ERR_RUNTIME 4
#define BEAMDPD_ERR_IO 5

    typedef struct beamdpd_config beamdpd_config;
    typedef struct beamdpd_report beamdpd_report;

    /* library version string, e.g. "0.1.0" */
    const char *beamdpd_version(void);

    /* message of the last failure on this thread; empty string if none */
    const char *beamdpd_last_error(void);

    /* ---- experiment configuration ---- */

    /* built-in defaults (the shipped full-scale experiment) */
    int beamdpd_config_create_default(beamdpd_config **out);

    /* load a JSON config file; missing fields fall back to defaults */
    int beamdpd_config_load(const char *path, beamdpd_config **out);

    void beamdpd_config_free(beamdpd_config *cfg);

    /* CI-speed scaling: shrinks the learning block and iteration count */
    int beamdpd_config_set_fast(beamdpd_config *cfg, int enable);

    int beamdpd_config_set_output_dir(beamdpd_config *cfg, const char *dir);

    int beamdpd_config_set_seed(beamdpd_config *cfg, uint64_t seed);

    /* antenna counts for the emission-pattern stage (enables the stage) */
    int beamdpd_config_set_pattern_antennas(beamdpd_config *cfg, const int32_t *m_list,
                                            size_t count);

    /* Run all invariant checks without executing. On success *diagnostics
     * receives a NULL-terminated array of messages (empty when the config is
     * valid) to be released with beamdpd_strings_free. */
    int beamdpd_config_validate(const beamdpd_config *cfg, char ***diagnostics, size_t *count);

    void beamdpd_strings_free(char **strings, size_t count);

    /* ---- execution ---- */

    /* run the configured scenarios (and patterns when enabled); artifacts are
     * written into the configured output directory */
    int beamdpd_run(const beamdpd_config *cfg, beamdpd_report **out);

    /* emission-pattern stage only */
    int beamdpd_run_patterns(const beamdpd_config *cfg, beamdpd_report **out);

    void beamdpd_report_free(beamdpd_report *report);

    /* ---- results ---- */

    size_t beamdpd_report_scenario_count(const beamdpd_report *report);

    /* scenario name pointer stays valid for the lifetime of the report */
    int beamdpd_report_scenario_name(const beamdpd_report *report, size_t index,
                                     const char **name);

    int beamdpd_report_metrics(const beamdpd_report *report, size_t index, double *evm_pct,
                               double *aclr_lower_dbc, double *aclr_upper_dbc);

    /* serialized report.json content; pointer owned by the report */
    int beamdpd_report_json(const beamdpd_report *report, const char **json_text);

#ifdef __cplusplus
}
#endif

#endif /* BEAMDPD_H */
