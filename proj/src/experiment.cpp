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

#include "experiment.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "errors.hpp"
#include "io.hpp"
#include "rng.hpp"

namespace beamdpd
{
    std::string scenario_name(Scenario s)
    {
        switch (s)
        {
        case Scenario::no_dpd:
            return "no_dpd";
        case Scenario::single_pa_learning:
            return "single_pa_learning";
        case Scenario::proposed:
            return "proposed";
        }
        fail(Errc::invalid_argument, "unknown scenario");
    }

    Scenario scenario_from_name(const std::string &name)
    {
        if (name == "no_dpd")
            return Scenario::no_dpd;
        if (name == "single_pa_learning")
            return Scenario::single_pa_learning;
        if (name == "proposed")
            return Scenario::proposed;
        fail(Errc::parse, "unknown scenario '" + name + "'");
    }

    namespace
    {
        template <typename T>
        void get_to(const nlohmann::json &j, const char *key, T &out)
        {
            if (j.contains(key))
                out = j.at(key).get<T>();
        }
    }

    ExperimentConfig ExperimentConfig::from_json(const nlohmann::json &j)
    {
        ExperimentConfig cfg;
        try
        {
            get_to(j, "seed", cfg.seed);
            get_to(j, "output_dir", cfg.output_dir);
            get_to(j, "steering_deg", cfg.steering_deg);
            get_to(j, "dump_waveforms", cfg.dump_waveforms);
            get_to(j, "element_spacing_wavelengths", cfg.element_spacing_wavelengths);
            if (j.contains("scenarios"))
            {
                cfg.scenarios.clear();
                for (const auto &s : j.at("scenarios"))
                    cfg.scenarios.push_back(scenario_from_name(s.get<std::string>()));
            }
            if (j.contains("ofdm"))
            {
                const auto &o = j.at("ofdm");
                get_to(o, "occupied_bandwidth_hz", cfg.ofdm.occupied_bandwidth_hz);
                get_to(o, "sample_rate_hz", cfg.ofdm.sample_rate_hz);
                get_to(o, "subcarrier_spacing_hz", cfg.ofdm.subcarrier_spacing_hz);
                get_to(o, "num_active_subcarriers", cfg.ofdm.num_active_subcarriers);
                get_to(o, "num_symbols", cfg.ofdm.num_symbols);
                get_to(o, "cyclic_prefix_fraction", cfg.ofdm.cyclic_prefix_fraction);
                get_to(o, "papr_target_db", cfg.ofdm.papr_target_db);
                get_to(o, "papr_max_iters", cfg.ofdm.papr_max_iters);
                get_to(o, "papr_clip_margin_db", cfg.ofdm.papr_clip_margin_db);
                get_to(o, "wola_taper_samples", cfg.ofdm.wola_taper_samples);
                if (o.contains("constellation"))
                {
                    std::string c = o.at("constellation").get<std::string>();
                    require(c == "QAM16", Errc::parse, "ofdm.constellation: only QAM16 supported");
                }
            }
            if (j.contains("population"))
            {
                const auto &p = j.at("population");
                get_to(p, "count", cfg.population.count);
                get_to(p, "order", cfg.population.order);
                get_to(p, "memory", cfg.population.memory);
                get_to(p, "max_retries", cfg.population.max_retries);
                if (p.contains("dispersion"))
                {
                    if (p.at("dispersion").is_number())
                        cfg.population.dispersion_default = p.at("dispersion").get<double>();
                    else
                        for (const auto &[k, v] : p.at("dispersion").items())
                            cfg.population.dispersion[std::stoi(k)] = v.get<double>();
                }
                if (p.contains("aclr_band_dbc"))
                {
                    cfg.population_aclr_band_dbc[0] = p.at("aclr_band_dbc").at(0).get<double>();
                    cfg.population_aclr_band_dbc[1] = p.at("aclr_band_dbc").at(1).get<double>();
                }
                if (p.contains("file") && !p.at("file").is_null())
                    cfg.population_file = p.at("file").get<std::string>();
                if (p.contains("base_model"))
                    cfg.population.base_model = ph_model_from_json(p.at("base_model"));
            }
            if (j.contains("dpd"))
            {
                const auto &d = j.at("dpd");
                get_to(d, "order_q", cfg.dpd.order_q);
                get_to(d, "learning_rate_mu", cfg.dpd.learning_rate_mu);
                get_to(d, "block_size_b", cfg.dpd.block_size_b);
                get_to(d, "num_iterations", cfg.dpd.num_iterations);
                get_to(d, "linear_gain_taps", cfg.dpd.linear_gain_taps);
                get_to(d, "tail_average", cfg.dpd.tail_average);
                if (d.contains("memory"))
                {
                    if (d.at("memory").is_number())
                        cfg.dpd.memory.assign(
                            std::max<std::size_t>(1, (cfg.dpd.order_q - 1) / 2),
                            d.at("memory").get<int>());
                    else
                        cfg.dpd.memory = d.at("memory").get<std::vector<int>>();
                }
                if (d.contains("orthogonalization"))
                {
                    std::string m = d.at("orthogonalization").get<std::string>();
                    if (m == "cholesky")
                        cfg.dpd.orthogonalization = Orthogonalization::cholesky;
                    else if (m == "gram_schmidt")
                        cfg.dpd.orthogonalization = Orthogonalization::gram_schmidt;
                    else
                        fail(Errc::parse, "dpd.orthogonalization: unknown method '" + m + "'");
                }
            }
            if (j.contains("mismatch"))
            {
                const auto &m = j.at("mismatch");
                get_to(m, "enabled", cfg.mismatch_enabled);
                if (m.contains("amplitude_range_pct"))
                {
                    cfg.mismatch.amplitude_range_pct[0] = m.at("amplitude_range_pct").at(0);
                    cfg.mismatch.amplitude_range_pct[1] = m.at("amplitude_range_pct").at(1);
                }
                if (m.contains("phase_range_deg"))
                {
                    cfg.mismatch.phase_range_deg[0] = m.at("phase_range_deg").at(0);
                    cfg.mismatch.phase_range_deg[1] = m.at("phase_range_deg").at(1);
                }
            }
            if (j.contains("feedback"))
            {
                const auto &f = j.at("feedback");
                if (f.contains("coupling_gc"))
                    cfg.coupling_gc = cd{f.at("coupling_gc").at(0).get<double>(),
                                         f.at("coupling_gc").at(1).get<double>()};
                if (f.contains("mode"))
                {
                    std::string m = f.at("mode").get<std::string>();
                    if (m == "anti_beamform")
                        cfg.feedback_mode = FeedbackMode::anti_beamform;
                    else if (m == "weights_to_one")
                        cfg.feedback_mode = FeedbackMode::weights_to_one;
                    else
                        fail(Errc::parse, "feedback.mode: unknown mode '" + m + "'");
                }
                get_to(f, "noise_enabled", cfg.feedback_noise_enabled);
                get_to(f, "noise_snr_db", cfg.feedback_noise_snr_db);
            }
            if (j.contains("pattern"))
            {
                const auto &p = j.at("pattern");
                get_to(p, "enabled", cfg.pattern.enabled);
                get_to(p, "angle_step_deg", cfg.pattern.angle_step_deg);
                get_to(p, "antennas", cfg.pattern.antennas);
            }
        }
        catch (const nlohmann::json::exception &e)
        {
            fail(Errc::parse, std::string("experiment config: ") + e.what());
        }
        return cfg;
    }

    nlohmann::json ExperimentConfig::to_json() const
    {
        nlohmann::json j;
        j["seed"] = seed;
        j["output_dir"] = output_dir;
        j["steering_deg"] = steering_deg;
        j["element_spacing_wavelengths"] = element_spacing_wavelengths;
        j["dump_waveforms"] = dump_waveforms;
        j["scenarios"] = nlohmann::json::array();
        for (Scenario s : scenarios)
            j["scenarios"].push_back(scenario_name(s));
        j["ofdm"] = {{"occupied_bandwidth_hz", ofdm.occupied_bandwidth_hz},
                     {"sample_rate_hz", ofdm.sample_rate_hz},
                     {"subcarrier_spacing_hz", ofdm.subcarrier_spacing_hz},
                     {"num_active_subcarriers", ofdm.num_active_subcarriers},
                     {"constellation", "QAM16"},
                     {"num_symbols", ofdm.num_symbols},
                     {"cyclic_prefix_fraction", ofdm.cyclic_prefix_fraction},
                     {"papr_target_db", ofdm.papr_target_db},
                     {"papr_max_iters", ofdm.papr_max_iters},
                     {"papr_clip_margin_db", ofdm.papr_clip_margin_db},
                     {"wola_taper_samples", ofdm.wola_taper_samples}};
        j["population"] = {{"count", population.count},
                           {"order", population.order},
                           {"memory", population.memory},
                           {"dispersion", population.dispersion_default},
                           {"max_retries", population.max_retries},
                           {"aclr_band_dbc", {population_aclr_band_dbc[0],
                                              population_aclr_band_dbc[1]}}};
        if (population_file)
            j["population"]["file"] = *population_file;
        j["dpd"] = {{"order_q", dpd.order_q},
                    {"memory", dpd.memory.empty() ? nlohmann::json(3) : nlohmann::json(dpd.memory)},
                    {"learning_rate_mu", dpd.learning_rate_mu},
                    {"block_size_b", dpd.block_size_b},
                    {"num_iterations", dpd.num_iterations},
                    {"orthogonalization", dpd.orthogonalization == Orthogonalization::cholesky
                                              ? "cholesky"
                                              : "gram_schmidt"},
                    {"linear_gain_taps", dpd.linear_gain_taps},
                    {"tail_average", dpd.tail_average}};
        j["mismatch"] = {{"enabled", mismatch_enabled},
                         {"amplitude_range_pct",
                          {mismatch.amplitude_range_pct[0], mismatch.amplitude_range_pct[1]}},
                         {"phase_range_deg",
                          {mismatch.phase_range_deg[0], mismatch.phase_range_deg[1]}}};
        j["feedback"] = {{"coupling_gc", {coupling_gc.real(), coupling_gc.imag()}},
                         {"mode", feedback_mode == FeedbackMode::anti_beamform ? "anti_beamform"
                                                                               : "weights_to_one"},
                         {"noise_enabled", feedback_noise_enabled},
                         {"noise_snr_db", feedback_noise_snr_db}};
        j["pattern"] = {{"enabled", pattern.enabled},
                        {"angle_step_deg", pattern.angle_step_deg},
                        {"antennas", pattern.antennas}};
        return j;
    }

    void ExperimentConfig::apply_fast()
    {
        dpd.block_size_b = 20000;
        dpd.num_iterations = 12;
        ofdm.num_symbols = std::min(ofdm.num_symbols, 14);
    }

    std::vector<std::string> ExperimentConfig::validate() const
    {
        std::vector<std::string> diags;
        auto check = [&](auto &&fn)
        {
            try
            {
                fn();
            }
            catch (const Error &e)
            {
                diags.emplace_back(e.what());
            }
        };
        check([&] { ofdm.validate(); });
        check([&] { population.validate(); });
        check([&] { dpd.validate(); });
        check([&] { mismatch.validate(); });
        if (dpd.order_q % 2 == 0)
            diags.push_back("dpd.order_q must be odd (nonlinear orders are odd only)");
        if (dpd.block_size_b < dpd.coeff_count())
            diags.push_back("dpd.block_size_b (" + std::to_string(dpd.block_size_b) +
                            ") is smaller than the DPD coefficient count (" +
                            std::to_string(dpd.coeff_count()) + ")");
        if (scenarios.empty() && !pattern.enabled)
            diags.push_back("config selects no scenarios and no pattern stage");
        if (population_aclr_band_dbc[0] >= population_aclr_band_dbc[1])
            diags.push_back("population.aclr_band_dbc must be an increasing pair");
        for (int m : pattern.antennas)
            if (m < 1)
                diags.push_back("pattern.antennas entries must be >= 1");
        if (steering_deg < -90.0 || steering_deg > 90.0)
            diags.push_back("steering_deg must lie in [-90, 90]");
        return diags;
    }

    namespace
    {
        struct Workspace
        {
            ExperimentConfig cfg;
            OfdmConfig eval_cfg, learn_cfg;
            ComplexSignal x_eval, x_learn;
            SymbolGrid grid_eval;
            std::vector<PHModel> population;
            std::vector<cd> eps;
            ChannelDef channel;
            std::pair<double, double> occupied{0, 0};
            ChannelDef nominal; // fixed 20 MHz grid used for population probes
        };

        SubArray make_subarray(const Workspace &ws, const std::vector<PHModel> &models)
        {
            SubArray sub;
            sub.models = models;
            sub.weights = steering_weights(static_cast<int>(models.size()), ws.cfg.steering_deg,
                                           ws.cfg.element_spacing_wavelengths);
            sub.geometry.element_spacing_wavelengths = ws.cfg.element_spacing_wavelengths;
            return sub;
        }

        FeedbackNetwork make_network(const Workspace &ws, const std::vector<cd> &eps)
        {
            FeedbackNetwork net;
            net.coupling_gc = ws.cfg.coupling_gc;
            net.deviations = eps;
            net.mode = ws.cfg.feedback_mode;
            net.noise_enabled = ws.cfg.feedback_noise_enabled;
            net.noise_snr_db = ws.cfg.feedback_noise_snr_db;
            net.noise_seed = derive_seed(ws.cfg.seed, "feedback-noise");
            return net;
        }

        Workspace prepare(const ExperimentConfig &cfg)
        {
            auto diags = cfg.validate();
            if (!diags.empty())
            {
                std::string msg = "invalid experiment config:";
                for (const auto &d : diags)
                    msg += "\n  - " + d;
                fail(Errc::validation, msg);
            }

            Workspace ws;
            ws.cfg = cfg;

            ws.eval_cfg = cfg.ofdm;
            ws.eval_cfg.rng_seed = derive_seed(cfg.seed, "ofdm-eval");
            auto [sig_e, grid_e] = generate_ofdm(ws.eval_cfg);
            ws.x_eval = std::move(sig_e);
            ws.grid_eval = std::move(grid_e);

            ws.learn_cfg = cfg.ofdm;
            ws.learn_cfg.rng_seed = derive_seed(cfg.seed, "ofdm-learn");
            std::size_t needed = static_cast<std::size_t>(cfg.dpd.block_size_b) *
                                 static_cast<std::size_t>(cfg.dpd.num_iterations);
            ws.learn_cfg.num_symbols = static_cast<int>(
                needed / static_cast<std::size_t>(cfg.ofdm.symbol_stride()) + 1);
            ws.x_learn = generate_ofdm(ws.learn_cfg).first;

            ws.nominal = make_channel(0.0, cfg.ofdm.occupied_bandwidth_hz);

            if (cfg.population_file)
            {
                ws.population = population_from_json(read_json_file(*cfg.population_file));
                require(static_cast<int>(ws.population.size()) == cfg.population.count,
                        Errc::validation, "population file model count differs from config count");
            }
            else
            {
                PaPopulationConfig pc = cfg.population;
                pc.rng_seed = derive_seed(cfg.seed, "population");
                PaAclrProbe probe = [&](const PHModel &m)
                { return aclr(apply_ph(m, ws.x_eval), ws.nominal); };
                ws.population = synth_population(
                    pc, probe, {cfg.population_aclr_band_dbc[0], cfg.population_aclr_band_dbc[1]});
            }

            ws.eps.assign(ws.population.size(), cd{0, 0});
            if (cfg.mismatch_enabled)
            {
                MismatchConfig mc = cfg.mismatch;
                mc.rng_seed = derive_seed(cfg.seed, "mismatch");
                ws.eps = sample_mismatch(mc, static_cast<int>(ws.population.size()));
            }

            // channel definition from the no-DPD combined spectrum, shared by
            // every scenario of the run
            SubArray sub = make_subarray(ws, ws.population);
            ComplexSignal y_no = combined_main_beam(sub, ws.x_eval);
            Psd psd_no = psd_welch(y_no, 4096, 0.5, Window::blackman_harris4);
            ws.occupied = occupied_bandwidth(psd_no, 0.99);
            ws.channel = channel_from_psd(psd_no, cfg.ofdm.occupied_bandwidth_hz, 0.99);
            return ws;
        }

        struct PatternOutputs
        {
            int m_count = 0;
            EmissionPattern proposed, no_dpd;
            std::pair<double, double> proposed_aclr{0, 0};
        };

        PatternOutputs pattern_for(const Workspace &ws, const std::vector<PHModel> &models,
                                   const std::vector<cd> &eps)
        {
            PatternOutputs out;
            out.m_count = static_cast<int>(models.size());
            SubArray sub = make_subarray(ws, models);
            FeedbackNetwork net = make_network(ws, eps);
            auto grid = default_angle_grid(ws.cfg.pattern.angle_step_deg);

            out.no_dpd = emission_pattern(sub, ws.x_eval, ws.cfg.steering_deg, ws.channel, grid);

            LearnResult lr = learn(sub, net, ws.cfg.dpd, ws.x_learn);
            ComplexSignal xt = apply_dpd(lr.state, ws.cfg.dpd, ws.x_eval);
            out.proposed = emission_pattern(sub, xt, ws.cfg.steering_deg, ws.channel, grid);
            out.proposed_aclr = aclr(combined_main_beam(sub, xt), ws.channel);
            return out;
        }

        nlohmann::json metrics_json(const MetricsReport &m)
        {
            return {{"scenario", m.scenario},
                    {"evm_pct", m.evm_pct},
                    {"aclr_lower_dbc", m.aclr_lower_dbc},
                    {"aclr_upper_dbc", m.aclr_upper_dbc},
                    {"occupied_bw_hz", m.occupied_bw_hz}};
        }

        RunReport run_impl(const ExperimentConfig &cfg, bool patterns_only)
        {
            Workspace ws = prepare(cfg);
            std::filesystem::create_directories(cfg.output_dir);
            auto path = [&](const std::string &name)
            { return (std::filesystem::path(cfg.output_dir) / name).string(); };

            RunReport rep;
            nlohmann::json &report = rep.report;
            report["config"] = cfg.to_json();
            report["seeds"] = {{"global", cfg.seed},
                               {"ofdm_eval", ws.eval_cfg.rng_seed},
                               {"ofdm_learn", ws.learn_cfg.rng_seed},
                               {"population", derive_seed(cfg.seed, "population")},
                               {"mismatch", derive_seed(cfg.seed, "mismatch")}};
            report["channel"] = {{"wanted_hz", {ws.channel.wanted_lo, ws.channel.wanted_hi}},
                                 {"adjacent_lower_hz",
                                  {ws.channel.adjacent_lower_lo, ws.channel.adjacent_lower_hi}},
                                 {"adjacent_upper_hz",
                                  {ws.channel.adjacent_upper_lo, ws.channel.adjacent_upper_hi}}};
            report["occupied_bw_hz"] = ws.occupied.second - ws.occupied.first;
            {
                nlohmann::json eps = nlohmann::json::array();
                for (const cd &e : ws.eps)
                    eps.push_back({e.real(), e.imag()});
                report["realized_mismatch_eps"] = std::move(eps);
            }

            write_text_file(path("population.json"), population_to_json(ws.population).dump(2) + "\n");
            if (cfg.dump_waveforms)
                write_waveform(path("waveform_eval.bin"), ws.x_eval, ws.eval_cfg.rng_seed);

            SubArray sub = make_subarray(ws, ws.population);
            FeedbackNetwork net = make_network(ws, ws.eps);

            report["scenarios"] = nlohmann::json::array();
            if (!patterns_only)
            {
                for (Scenario sc : cfg.scenarios)
                {
                    std::string name = scenario_name(sc);
                    DpdState state;
                    double corr_max = 0.0;
                    if (sc != Scenario::no_dpd)
                    {
                        LearnOptions opts;
                        if (sc == Scenario::single_pa_learning)
                            opts.observation = LearnOptions::Observation::single_pa;
                        LearnResult lr;
                        try
                        {
                            lr = learn(sub, net, cfg.dpd, ws.x_learn, opts);
                        }
                        catch (const Error &e)
                        {
                            fail(e.code(), "scenario '" + name + "': " + e.what());
                        }
                        state = lr.state;
                        corr_max = lr.final_block_corr_max;
                        write_trace_csv(path("trace_" + name + ".csv"), lr.trace, true);
                        write_trace_csv(path("trace_" + name + "_ortho.csv"), lr.trace, false);
                    }

                    ComplexSignal xt = apply_dpd(state, cfg.dpd, ws.x_eval);
                    ComplexSignal y = combined_main_beam(sub, xt);
                    Psd psd = psd_welch(y, 4096, 0.5, Window::blackman_harris4);
                    auto [lo, hi] = aclr_from_psd(psd, ws.channel);

                    ScenarioResult res;
                    res.scenario = name;
                    res.final_block_corr_max = corr_max;
                    res.metrics.scenario = name;
                    res.metrics.aclr_lower_dbc = lo;
                    res.metrics.aclr_upper_dbc = hi;
                    res.metrics.evm_pct = evm_percent(ws.grid_eval, y, ws.eval_cfg);
                    res.metrics.occupied_bw_hz = ws.occupied.second - ws.occupied.first;
                    write_psd_csv(path("psd_" + name + ".csv"), psd);
                    if (cfg.dump_waveforms)
                        write_waveform(path("waveform_" + name + ".bin"), y, cfg.seed);

                    report["scenarios"].push_back(metrics_json(res.metrics));
                    report["scenarios"].back()["final_block_corr_max"] = corr_max;
                    rep.results.push_back(std::move(res));
                }

                std::ostringstream mc;
                mc << "scenario,evm_pct,aclr_lower_dbc,aclr_upper_dbc\n";
                for (const auto &r : rep.results)
                {
                    char buf[160];
                    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f\n",
                                  r.metrics.scenario.c_str(), r.metrics.evm_pct,
                                  r.metrics.aclr_lower_dbc, r.metrics.aclr_upper_dbc);
                    mc << buf;
                }
                write_text_file(path("metrics.csv"), mc.str());
            }

            if (cfg.pattern.enabled || patterns_only)
            {
                report["patterns"] = nlohmann::json::array();
                auto emit = [&](const PatternOutputs &po)
                {
                    std::string mtag = "M" + std::to_string(po.m_count);
                    write_pattern_csv(path("pattern_" + mtag + ".csv"), po.proposed);
                    write_pattern_csv(path("pattern_" + mtag + "_no_dpd.csv"), po.no_dpd);
                    report["patterns"].push_back(
                        {{"m", po.m_count},
                         {"proposed_aclr_dbc", {po.proposed_aclr.first, po.proposed_aclr.second}},
                         {"files",
                          {"pattern_" + mtag + ".csv", "pattern_" + mtag + "_no_dpd.csv"}}});
                };

                // single-antenna reference: the base model with its own learning
                {
                    std::vector<PHModel> one = {cfg.population.base_model};
                    PatternOutputs po = pattern_for(ws, one, {cd{0, 0}});
                    emit(po);
                }
                for (int m_count : cfg.pattern.antennas)
                {
                    std::vector<PHModel> models;
                    std::vector<cd> eps;
                    if (m_count == static_cast<int>(ws.population.size()))
                    {
                        models = ws.population;
                        eps = ws.eps;
                    }
                    else
                    {
                        PaPopulationConfig pc = cfg.population;
                        pc.count = m_count;
                        pc.rng_seed = derive_seed(cfg.seed, "population-M" + std::to_string(m_count));
                        PaAclrProbe probe = [&](const PHModel &m)
                        { return aclr(apply_ph(m, ws.x_eval), ws.nominal); };
                        models = synth_population(pc, probe,
                                                  {cfg.population_aclr_band_dbc[0],
                                                   cfg.population_aclr_band_dbc[1]});
                        eps.assign(models.size(), cd{0, 0});
                        if (cfg.mismatch_enabled)
                        {
                            MismatchConfig mc = cfg.mismatch;
                            mc.rng_seed = derive_seed(cfg.seed, "mismatch-M" + std::to_string(m_count));
                            eps = sample_mismatch(mc, m_count);
                        }
                    }
                    emit(pattern_for(ws, models, eps));
                }
            }

            write_text_file(path("report.json"), report.dump(2) + "\n");
            return rep;
        }
    }

    RunReport run(const ExperimentConfig &cfg)
    {
        return run_impl(cfg, false);
    }

    RunReport run_patterns(const ExperimentConfig &cfg)
    {
        return run_impl(cfg, true);
    }
}
