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

#include "oddm/bench.hpp"

#include "oddm/io.hpp"
#include "oddm/parallel.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace oddm {

void SweepSpec::validate() const
{
    if (q_list.empty() || rho_list.empty())
        throw ValidationError("sweep needs at least one Q and one rho value");
    if (trials < 1)
        throw ValidationError("sweep needs trials >= 1");
    for (int q : q_list)
        for (double rho : rho_list)
            OddmParams(M, N, T0, q, rho, kappa, allow_wide_pulse);
}

std::uint64_t trial_seed(std::uint64_t seed, int trial)
{
    // Two splitmix64 rounds: scramble the base seed, then step by the trial index.
    // Xoring seed and trial before a single round collides for small neighbouring values.
    auto mix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    const std::uint64_t golden = 0x9E3779B97F4A7C15ull;
    return mix(mix(seed + golden) + (std::uint64_t(trial) + 1) * golden);
}

double filtered_vs_exact_nmse_db(const OddmParams& params, PulseKind kind, const SymbolFrame& frame)
{
    const ElementaryPulse a = make_elementary_pulse(params, kind);
    const DdopPulse u = build_ddop_timedomain(a, params, true);
    const auto exact = modulate_exact(frame, u);
    const auto filtered = modulate_filtered(frame, a, params);
    return nmse_db(exact.waveform, filtered.waveform);
}

std::vector<ReportRow> run_nmse_sweep(const SweepSpec& spec, bool record_timing)
{
    spec.validate();
    const std::size_t nq = spec.q_list.size();
    const std::size_t nr = spec.rho_list.size();
    const std::size_t nt = std::size_t(spec.trials);
    std::vector<ReportRow> trial_rows(nq * nr * nt);

    parallel_for(trial_rows.size(), [&](std::size_t idx) {
        const std::size_t t = idx % nt;
        const std::size_t r = (idx / nt) % nr;
        const std::size_t q = idx / (nt * nr);
        const OddmParams params(spec.M, spec.N, spec.T0, spec.q_list[q], spec.rho_list[r], spec.kappa,
                                spec.allow_wide_pulse);
        const auto start = std::chrono::steady_clock::now();
        const SymbolFrame frame = random_qpsk_frame(spec.M, spec.N, trial_seed(spec.seed, int(t)));
        const double nmse = filtered_vs_exact_nmse_db(params, spec.kind, frame);
        const double ms =
            record_timing
                ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()
                : 0.0;
        trial_rows[idx] = {spec.q_list[q], spec.rho_list[r], int(t), nmse, ms};
    });

    std::vector<ReportRow> out;
    out.reserve(trial_rows.size() + nq * nr);
    for (std::size_t block = 0; block < nq * nr; ++block) {
        double sum_db = 0.0;
        double sum_ms = 0.0;
        for (std::size_t t = 0; t < nt; ++t) {
            const auto& row = trial_rows[block * nt + t];
            out.push_back(row);
            sum_db += row.nmse_db;
            sum_ms += row.wall_ms;
        }
        const auto& first = trial_rows[block * nt];
        out.push_back({first.q, first.rho, mean_row, sum_db / double(nt), sum_ms / double(nt)});
    }
    return out;
}

std::string sweep_csv(const std::vector<ReportRow>& rows)
{
    std::string out = std::string(sweep_csv_header) + "\n";
    for (const auto& r : rows) {
        out += std::to_string(r.q) + "," + format_double(r.rho) + "," +
               (r.trial == mean_row ? std::string("mean") : std::to_string(r.trial)) + "," + format_double(r.nmse_db) +
               "," + format_double(r.wall_ms) + "\n";
    }
    return out;
}

std::string orthogonality_csv(const OrthogonalityReport& report)
{
    std::string out = std::string(orthogonality_csv_header) + "\n";
    for (const auto& pt : report.grid)
        out += std::to_string(pt.m) + "," + std::to_string(pt.n) + "," + format_double(std::abs(pt.value)) + "\n";
    return out;
}

std::string spectrum_csv(const DdopSpectrum& spectrum)
{
    std::string out = std::string(spectrum_csv_header) + "\n";
    for (std::size_t i = 0; i < spectrum.freqs.size(); ++i)
        out += format_double(spectrum.freqs[i]) + "," + format_double(std::abs(spectrum.values[i])) + "\n";
    return out;
}

std::vector<double> frequency_grid(double f_max, double step)
{
    if (!(step > 0.0) || !(f_max >= 0.0))
        throw ValidationError("frequency grid needs step > 0 and f_max >= 0");
    const long half = long(std::floor(f_max / step + 1e-9));
    std::vector<double> f;
    f.reserve(std::size_t(2 * half + 1));
    for (long i = -half; i <= half; ++i)
        f.push_back(double(i) * step);
    return f;
}

LoopbackReport run_loopback(const LoopbackConfig& cfg)
{
    const OddmParams& p = cfg.params;
    const SymbolFrame frame = cfg.frame ? *cfg.frame : random_qpsk_frame(p.M(), p.N(), cfg.seed);
    frame.require_shape(p);

    const ElementaryPulse a = make_elementary_pulse(p, cfg.kind);
    const DdopPulse u = build_ddop_timedomain(a, p, true);
    const Waveform tx = modulate_exact(frame, u).waveform;

    Waveform faded = cfg.channel ? apply_channel(tx, *cfg.channel) : tx;

    LoopbackReport rep;
    rep.M = p.M();
    rep.N = p.N();
    Waveform rx = faded;
    if (cfg.noise) {
        const long bits = 2L * p.M() * p.N();
        rep.n0 = resolve_n0(tx, *cfg.noise, bits);
        rx = add_noise(faded, NoiseSpec::from_n0(rep.n0), bits, cfg.seed ^ 0x6E6F697365ull);
        rep.noise_samples = long(rx.size());
        rep.noise_variance_expected = rep.n0 * rx.rate;
        double acc = 0.0;
        for (std::size_t k = 0; k < rx.size(); ++k)
            acc += std::norm(rx.samples[k] - faded.samples[k]);
        rep.noise_variance_measured = rx.size() ? acc / double(rx.size()) : 0.0;
    }

    rep.received = demodulate(rx, u);

    long max_delay = 0;
    if (cfg.channel)
        for (const auto& path : cfg.channel->paths)
            max_delay = std::max(max_delay, sample_offset(path.delay_s, 0.0, p.sample_rate()));
    const long bin = p.samples_per_delay_bin();
    rep.interior_margin_bins = int((max_delay + bin - 1) / bin);

    double interior_err = 0.0;
    long interior_count = 0;
    for (int m = 0; m < p.M(); ++m) {
        const bool interior = m >= rep.interior_margin_bins && m < p.M() - rep.interior_margin_bins;
        for (int n = p.doppler_min(); n <= p.doppler_max(); ++n) {
            const double e2 = std::norm(rep.received.at(m, n) - frame.at(m, n));
            const double e = std::sqrt(e2);
            rep.error_energy += e2;
            rep.symbol_energy += std::norm(frame.at(m, n));
            rep.max_abs_error = std::max(rep.max_abs_error, e);
            if (interior) {
                interior_err += e2;
                ++interior_count;
                rep.interior_max_abs_error = std::max(rep.interior_max_abs_error, e);
            }
        }
    }
    const double count = double(p.M()) * p.N();
    rep.rms_error = std::sqrt(rep.error_energy / count);
    rep.interior_rms_error = interior_count ? std::sqrt(interior_err / double(interior_count)) : 0.0;
    rep.degenerate_input = rep.symbol_energy == 0.0;
    if (rep.degenerate_input || rep.error_energy == 0.0)
        rep.evm_db = nmse_floor_db;
    else
        rep.evm_db = 10.0 * std::log10(rep.error_energy / rep.symbol_energy);
    return rep;
}

std::string loopback_report_json(const LoopbackReport& r)
{
    nlohmann::json doc;
    doc["M"] = r.M;
    doc["N"] = r.N;
    doc["degenerate_input"] = r.degenerate_input;
    doc["max_abs_error"] = r.max_abs_error;
    doc["rms_error"] = r.rms_error;
    doc["error_energy"] = r.error_energy;
    doc["symbol_energy"] = r.symbol_energy;
    doc["evm_db"] = r.evm_db;
    doc["interior_margin_bins"] = r.interior_margin_bins;
    doc["interior_max_abs_error"] = r.interior_max_abs_error;
    doc["interior_rms_error"] = r.interior_rms_error;
    doc["noise_samples"] = r.noise_samples;
    doc["n0"] = r.n0;
    doc["noise_variance_expected"] = r.noise_variance_expected;
    doc["noise_variance_measured"] = r.noise_variance_measured;
    return doc.dump(2) + "\n";
}

} // namespace oddm
