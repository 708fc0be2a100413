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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddm {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Raised when a parameter set or an input object violates a documented invariant.
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Floor returned by nmse_db when test and reference are identical.
inline constexpr double nmse_floor_db = -300.0;

/**
 * Frame parameters of the delay-Doppler multicarrier grid.
 *
 * M delay bins of width T0/M, N Doppler bins of width 1/(N*T0), an elementary
 * pulse of half-length Q delay bins with roll-off rho, and a sample rate of
 * kappa*M/T0. Because kappa is an integer, one delay bin is exactly kappa
 * samples and T0 is exactly kappa*M samples, so every time shift on the grid
 * is an integer sample shift.
 *
 * The constructor validates:
 *   - M >= 1, Q >= 1, kappa >= 2, T0 > 0, 0 <= rho <= 1
 *   - N even, or N == 1 (single elementary pulse)
 *   - 2Q <= M/4, unless `allow_wide_pulse` is set
 */
class OddmParams
{
public:
    OddmParams(int M, int N, double T0, int Q, double rho, int kappa = 8, bool allow_wide_pulse = false);

    int M() const { return M_; }
    int N() const { return N_; }
    double T0() const { return T0_; }
    int Q() const { return Q_; }
    double rho() const { return rho_; }
    int kappa() const { return kappa_; }
    bool allow_wide_pulse() const { return allow_wide_pulse_; }

    double delay_resolution() const { return T0_ / M_; }               // T0/M
    double doppler_resolution() const { return 1.0 / (N_ * T0_); }     // 1/(N T0)
    double bandwidth() const { return M_ / T0_; }                      // M/T0
    double frame_duration() const { return N_ * T0_; }                 // N T0
    double sample_rate() const { return kappa_ * M_ / T0_; }
    double sample_period() const { return T0_ / (double(kappa_) * M_); }

    long samples_per_delay_bin() const { return kappa_; }
    long samples_per_t0() const { return long(kappa_) * M_; }
    long pulse_half_samples() const { return long(Q_) * kappa_; }

    /// Lowest and highest Doppler index: -N/2 .. N/2-1 (just 0 when N == 1).
    int doppler_min() const { return -(N_ / 2); }
    int doppler_max() const { return N_ - N_ / 2 - 1; }

    /// Copy with a different Q and roll-off, re-validated.
    OddmParams with_pulse(int Q, double rho) const;
    /// Copy with a different oversampling factor, re-validated.
    OddmParams with_kappa(int kappa) const;

private:
    int M_;
    int N_;
    double T0_;
    int Q_;
    double rho_;
    int kappa_;
    bool allow_wide_pulse_;
};

struct FrameDimensions
{
    double bandwidth_hz; // B_x
    double duration_s;   // T_x
};

/// Occupied bandwidth and duration of an unprefixed frame.
/// B_x = (N-1)/(N T0) + (1+rho) M/T0, T_x = (M-1) T0/M + (N-1) T0 + 2Q T0/M.
FrameDimensions frame_dimensions(const OddmParams& params);

/// Uniformly sampled complex baseband signal; sample k sits at t_start + k/rate.
struct Waveform
{
    std::vector<cplx> samples;
    double rate = 1.0;
    double t_start = 0.0;

    Waveform() = default;
    Waveform(std::vector<cplx> samples, double rate, double t_start);

    std::size_t size() const { return samples.size(); }
    double time_at(std::size_t k) const { return t_start + double(k) / rate; }

    /// Discrete energy sum |x[k]|^2 / rate.
    double energy() const;

    /// Throws ValidationError on a non-finite sample or non-positive rate.
    void validate() const;
};

/// Integer sample offset of `t` relative to `t_ref` at `rate`.
/// Throws ValidationError when the offset is not an integer number of samples.
long sample_offset(double t, double t_ref, double rate);

/// Riemann-sum inner product sum_k x[k] conj(y[k]) / rate over the aligned overlap.
/// Disjoint supports give 0. Throws ValidationError on rate mismatch or off-grid alignment.
cplx inner_product(const Waveform& x, const Waveform& y);

/// 10 log10(|test - reference|^2 / |reference|^2) over the union of both supports,
/// zero-padding where a signal is absent. Returns nmse_floor_db when the error is exactly 0.
double nmse_db(const Waveform& reference, const Waveform& test);

} // namespace oddm
