// SPDX-License-Identifier: Apache-2.0
//
// oddm-toolkit: delay-Doppler multicarrier waveform synthesis and analysis
// Copyright (C) 2026 The oddm-toolkit authors
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

// Command-line front end: pulse generation, orthogonality scan, NMSE sweep, loopback.
//
// Exit codes: 0 success, 2 invalid parameters or input documents, 3 file I/O failure.

#include "oddm/bench.hpp"
#include "oddm/channel.hpp"
#include "oddm/ddop.hpp"
#include "oddm/io.hpp"
#include "oddm/modem.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int exit_validation = 2;
constexpr int exit_io = 3;

struct ParamArgs
{
    int M;
    int N;
    double T0 = 1.0;
    int Q;
    double rho;
    int kappa;
    std::string kind = "rrc";
    bool force = false;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--M", M, "delay bins per T0")->capture_default_str();
        cmd->add_option("--N", N, "Doppler bins (even, or 1)")->capture_default_str();
        cmd->add_option("--T0", T0, "design period T0 in seconds")->capture_default_str();
        cmd->add_option("--Q", Q, "elementary pulse half-length in delay bins")->capture_default_str();
        cmd->add_option("--rho", rho, "roll-off factor")->capture_default_str();
        cmd->add_option("--kappa", kappa, "samples per delay bin")->capture_default_str();
        cmd->add_option("--kind", kind, "elementary pulse: rrc, rc or sinc")->capture_default_str();
        cmd->add_flag("--force", force, "allow 2Q > M/4");
    }

    oddm::OddmParams params() const { return oddm::OddmParams(M, N, T0, Q, rho, kappa, force); }
};

int cmd_ddop(const ParamArgs& args, const std::string& out, const std::string& fourier_out,
             const std::string& spectrum_path, double spectrum_step, bool normalized)
{
    const auto params = args.params();
    const auto kind = oddm::parse_pulse_kind(args.kind);
    const auto a = oddm::make_elementary_pulse(params, kind);
    const auto u = oddm::build_ddop_timedomain(a, params, normalized);
    oddm::write_iq(out, u.wave);
    std::cout << "wrote " << out << ": " << u.wave.size() << " samples at " << oddm::format_double(u.wave.rate)
              << " Hz, t_start " << oddm::format_double(u.wave.t_start) << " s\n";

    if (!fourier_out.empty()) {
        auto uf = oddm::build_ddop_fourier(params, kind);
        if (normalized)
            uf = uf.as_normalized();
        oddm::write_iq(fourier_out, uf.wave);
        const double gap = oddm::nmse_db(u.wave, uf.wave);
        std::cout << "wrote " << fourier_out << ": Fourier-series construction, NMSE vs pulse train "
                  << oddm::format_double(gap) << " dB\n";
    }

    if (!spectrum_path.empty()) {
        const double step = spectrum_step > 0.0 ? spectrum_step : params.doppler_resolution() / 4.0;
        const int mc = oddm::spectral_bin_count(params, kind);
        const auto freqs = oddm::frequency_grid((mc / 2.0 + 2.0) / params.T0(), step);
        const auto spec = oddm::ddop_spectrum_analytic(params, kind, freqs);
        oddm::write_text_file(spectrum_path, oddm::spectrum_csv(spec));
        std::cout << "wrote " << spectrum_path << ": " << freqs.size() << " frequencies, spectral bins " << mc + 1
                  << "\n";
    }
    return 0;
}

int cmd_orthogonality(const ParamArgs& args, const std::string& csv)
{
    const auto params = args.params();
    const auto kind = oddm::parse_pulse_kind(args.kind);
    const auto u = oddm::build_ddop_timedomain(oddm::make_elementary_pulse(params, kind), params, true);
    const auto rep = oddm::orthogonality_scan(u);
    if (!csv.empty())
        oddm::write_text_file(csv, oddm::orthogonality_csv(rep));
    std::cout << "origin " << oddm::format_double(rep.origin.real()) << (rep.origin.imag() < 0 ? "" : "+")
              << oddm::format_double(rep.origin.imag()) << "j\n"
              << "max_off_origin_db " << oddm::format_double(rep.max_off_origin_db()) << " at (m=" << rep.max_m
              << ", n=" << rep.max_n << ")\n";
    return 0;
}

int cmd_sweep(const oddm::SweepSpec& spec, const std::string& csv, bool timing)
{
    const auto rows = oddm::run_nmse_sweep(spec, timing);
    const auto text = oddm::sweep_csv(rows);
    if (csv.empty())
        std::cout << text;
    else
        oddm::write_text_file(csv, text);

    bool all_below = true;
    for (const auto& r : rows) {
        if (r.trial != oddm::mean_row)
            continue;
        all_below = all_below && r.nmse_db < -45.0;
        std::fprintf(stderr, "Q=%-4d rho=%-4s mean NMSE %8.2f dB\n", r.q, oddm::format_double(r.rho).c_str(),
                     r.nmse_db);
    }
    std::fprintf(stderr, "all means below -45 dB: %s\n", all_below ? "yes" : "no");
    return 0;
}

int cmd_loopback(const ParamArgs& args, const std::string& channel_path, std::optional<double> ebn0,
                 std::optional<double> n0, std::uint64_t seed, const std::string& frame_path,
                 const std::string& frame_out, const std::string& report_path)
{
    oddm::LoopbackConfig cfg{args.params(), oddm::parse_pulse_kind(args.kind), std::nullopt, std::nullopt, std::nullopt,
                             seed};
    if (!channel_path.empty())
        cfg.channel = oddm::channel_from_json(oddm::read_text_file(channel_path));
    if (ebn0 && n0)
        throw oddm::ValidationError("give either --ebn0 or --n0, not both");
    if (ebn0)
        cfg.noise = oddm::NoiseSpec::from_ebn0_db(*ebn0);
    if (n0)
        cfg.noise = oddm::NoiseSpec::from_n0(*n0);
    if (!frame_path.empty())
        cfg.frame = oddm::frame_from_json(oddm::read_text_file(frame_path));

    const auto rep = oddm::run_loopback(cfg);
    if (!frame_out.empty())
        oddm::write_text_file(frame_out, oddm::frame_to_json(rep.received));
    const auto json = oddm::loopback_report_json(rep);
    if (report_path.empty())
        std::cout << json;
    else
        oddm::write_text_file(report_path, json);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ODDM waveform toolkit"};
    app.require_subcommand(1);

    ParamArgs ddop_args{512, 32, 1.0, 16, 0.1, 8};
    std::string ddop_out;
    std::string ddop_fourier_out;
    std::string ddop_spectrum;
    double ddop_spectrum_step = 0.0;
    bool ddop_normalized = false;
    auto* ddop = app.add_subcommand("ddop", "write the sampled delay-Doppler pulse and its spectrum");
    ddop_args.attach(ddop);
    ddop->add_option("--out", ddop_out, "IQ file for the pulse train")->required();
    ddop->add_option("--fourier-out", ddop_fourier_out, "IQ file for the Fourier-series construction");
    ddop->add_option("--spectrum", ddop_spectrum, "CSV file for |U(f)|");
    ddop->add_option("--spectrum-step", ddop_spectrum_step, "spectrum frequency step in Hz (default 1/(4 N T0))");
    ddop->add_flag("--normalized", ddop_normalized, "scale to unit energy");

    ParamArgs orth_args{32, 8, 1.0, 4, 0.5, 16};
    std::string orth_csv;
    auto* orth = app.add_subcommand("orthogonality", "scan the ambiguity function over the delay-Doppler grid");
    orth_args.attach(orth);
    orth->add_option("--csv", orth_csv, "CSV report (m,n,abs_ambiguity)");

    oddm::SweepSpec sweep_spec;
    std::string sweep_csv_path;
    std::string sweep_kind = "rrc";
    bool sweep_timing = false;
    auto* sweep = app.add_subcommand("nmse-sweep", "NMSE of the filtered approximation against the exact modulator");
    sweep->add_option("--M", sweep_spec.M)->capture_default_str();
    sweep->add_option("--N", sweep_spec.N)->capture_default_str();
    sweep->add_option("--T0", sweep_spec.T0)->capture_default_str();
    sweep->add_option("--kappa", sweep_spec.kappa)->capture_default_str();
    sweep->add_option("--q-list", sweep_spec.q_list, "comma-separated Q values")->delimiter(',')->capture_default_str();
    sweep->add_option("--rho-list", sweep_spec.rho_list, "comma-separated roll-off values")
        ->delimiter(',')
        ->capture_default_str();
    sweep->add_option("--trials", sweep_spec.trials)->capture_default_str();
    sweep->add_option("--seed", sweep_spec.seed)->capture_default_str();
    sweep->add_option("--kind", sweep_kind)->capture_default_str();
    sweep->add_flag("--force", sweep_spec.allow_wide_pulse, "allow 2Q > M/4");
    sweep->add_option("--csv", sweep_csv_path, "CSV report (stdout when omitted)");
    sweep->add_flag("--timing", sweep_timing, "record wall-clock time per trial (output no longer reproducible)");

    ParamArgs loop_args{64, 16, 1.0, 8, 0.3, 8};
    std::string loop_channel;
    std::optional<double> loop_ebn0;
    std::optional<double> loop_n0;
    std::uint64_t loop_seed = 1;
    std::string loop_frame;
    std::string loop_frame_out;
    std::string loop_report;
    auto* loop = app.add_subcommand("loopback", "modulate, pass through channel and noise, demodulate");
    loop_args.attach(loop);
    loop->add_option("--channel", loop_channel, "channel JSON file");
    loop->add_option("--ebn0", loop_ebn0, "Eb/N0 in dB (QPSK, 2 bits per symbol)");
    loop->add_option("--n0", loop_n0, "one-sided noise PSD N0");
    loop->add_option("--seed", loop_seed)->capture_default_str();
    loop->add_option("--frame", loop_frame, "symbol frame JSON (random QPSK when omitted)");
    loop->add_option("--frame-out", loop_frame_out, "write the demodulated frame as JSON");
    loop->add_option("--report", loop_report, "JSON report file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_validation;
    }

    try {
        if (ddop->parsed())
            return cmd_ddop(ddop_args, ddop_out, ddop_fourier_out, ddop_spectrum, ddop_spectrum_step, ddop_normalized);
        if (orth->parsed())
            return cmd_orthogonality(orth_args, orth_csv);
        if (sweep->parsed()) {
            sweep_spec.kind = oddm::parse_pulse_kind(sweep_kind);
            return cmd_sweep(sweep_spec, sweep_csv_path, sweep_timing);
        }
        if (loop->parsed())
            return cmd_loopback(loop_args, loop_channel, loop_ebn0, loop_n0, loop_seed, loop_frame, loop_frame_out,
                                loop_report);
    } catch (const oddm::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const oddm::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return exit_io;
    }
    return 1;
}
