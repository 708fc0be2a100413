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

#pragma once

#include "oddm/channel.hpp"
#include "oddm/ddop.hpp"
#include "oddm/modem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oddm {

/// Grid of (Q, rho) points for the filtered-vs-exact NMSE comparison.
struct SweepSpec
{
    int M = 512;
    int N = 32;
    double T0 = 1.0;
    int kappa = 8;
    std::vector<int> q_list{16, 32, 64};
    std::vector<double> rho_list{0.1, 0.3, 0.5, 0.7, 0.9};
    int trials = 4;
    std::uint64_t seed = 1;
    PulseKind kind = PulseKind::root_raised_cosine;
    bool allow_wide_pulse = false;

    /// Throws ValidationError if a list is empty, trials < 1, or any point fails parameter validation.
    void validate() const;
};

inline constexpr int mean_row = -1;

struct ReportRow
{
    int q;
    double rho;
    int trial; // mean_row for the per-point summary
    double nmse_db;
    double wall_ms;
};

/// Seed of the random frame used by `trial`; shared by every (Q, rho) point.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

/// NMSE (dB) of the filtered path against the exact path for one frame.
double filtered_vs_exact_nmse_db(const OddmParams& params, PulseKind kind, const SymbolFrame& frame);

/**
 * Runs every (Q, rho, trial) in parallel and returns rows ordered by Q, then
 * rho, then trial, with a mean row closing each (Q, rho) block. Wall times
 * are recorded only when `record_timing` is set, so that the default output
 * is byte-reproducible.
 */
std::vector<ReportRow> run_nmse_sweep(const SweepSpec& spec, bool record_timing = false);

inline constexpr const char* sweep_csv_header = "q,rho,trial,nmse_db,wall_ms";
inline constexpr const char* orthogonality_csv_header = "m,n,abs_ambiguity";
inline constexpr const char* spectrum_csv_header = "f_hz,abs_u";

std::string sweep_csv(const std::vector<ReportRow>& rows);
std::string orthogonality_csv(const OrthogonalityReport& report);
std::string spectrum_csv(const DdopSpectrum& spectrum);

/// Uniform grid over [-f_max, f_max] with the given step (f_max snapped down to the grid).
std::vector<double> frequency_grid(double f_max, double step);

struct LoopbackConfig
{
    OddmParams params;
    PulseKind kind = PulseKind::root_raised_cosine;
    std::optional<SymbolFrame> frame; // random QPSK from `seed` when absent
    std::optional<ChannelSpec> channel;
    std::optional<NoiseSpec> noise;
    std::uint64_t seed = 1;
};

struct LoopbackReport
{
    int M = 0;
    int N = 0;
    bool degenerate_input = false; // zero-energy symbol frame
    double max_abs_error = 0.0;    // over the full grid
    double rms_error = 0.0;
    double error_energy = 0.0;     // sum |Y - X|^2
    double symbol_energy = 0.0;    // sum |X|^2
    double evm_db = 0.0;           // 10 log10(error_energy / symbol_energy); floor when degenerate
    int interior_margin_bins = 0;  // delay bins excluded at each frame edge
    double interior_max_abs_error = 0.0;
    double interior_rms_error = 0.0;
    long noise_samples = 0;
    double n0 = 0.0;
    double noise_variance_expected = 0.0; // N0 * rate
    double noise_variance_measured = 0.0;
    SymbolFrame received{1, 1};
};

/// Modulate (exact path) -> channel -> noise -> demodulate, with error statistics.
LoopbackReport run_loopback(const LoopbackConfig& config);

std::string loopback_report_json(const LoopbackReport& report);

} // namespace oddm
