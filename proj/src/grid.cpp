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

#include "oddm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace oddm {

OddmParams::OddmParams(int M, int N, double T0, int Q, double rho, int kappa, bool allow_wide_pulse)
    : M_(M), N_(N), T0_(T0), Q_(Q), rho_(rho), kappa_(kappa), allow_wide_pulse_(allow_wide_pulse)
{
    if (M < 1)
        throw ValidationError("M must be a positive integer (got " + std::to_string(M) + ")");
    if (N < 1 || (N != 1 && N % 2 != 0))
        throw ValidationError("N must be even or 1 (got " + std::to_string(N) + ")");
    if (!(T0 > 0.0) || !std::isfinite(T0))
        throw ValidationError("T0 must be a positive finite duration");
    if (Q < 1)
        throw ValidationError("Q must be a positive integer (got " + std::to_string(Q) + ")");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw ValidationError("rho must lie in [0, 1]");
    if (kappa < 2)
        throw ValidationError("kappa must be >= 2 (got " + std::to_string(kappa) + ")");
    if (!allow_wide_pulse && 8L * Q > M)
        throw ValidationError("2Q <= M/4 violated (Q=" + std::to_string(Q) + ", M=" + std::to_string(M) +
                              "); elementary pulse too long for the delay grid");
}

OddmParams OddmParams::with_pulse(int Q, double rho) const
{
    return OddmParams(M_, N_, T0_, Q, rho, kappa_, allow_wide_pulse_);
}

OddmParams OddmParams::with_kappa(int kappa) const
{
    return OddmParams(M_, N_, T0_, Q_, rho_, kappa, allow_wide_pulse_);
}

FrameDimensions frame_dimensions(const OddmParams& p)
{
    const double pulse_bw = (1.0 + p.rho()) * p.M() / p.T0();
    const double ddop_duration = (p.N() - 1) * p.T0() + 2.0 * p.Q() * p.T0() / p.M();
    return {(p.N() - 1) * p.doppler_resolution() + pulse_bw, (p.M() - 1) * p.delay_resolution() + ddop_duration};
}

Waveform::Waveform(std::vector<cplx> s, double r, double t0) : samples(std::move(s)), rate(r), t_start(t0)
{
    validate();
}

double Waveform::energy() const
{
    double e = 0.0;
    for (const auto& v : samples)
        e += std::norm(v);
    return e / rate;
}

void Waveform::validate() const
{
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw ValidationError("waveform rate must be positive and finite");
    if (!std::isfinite(t_start))
        throw ValidationError("waveform t_start must be finite");
    for (const auto& v : samples)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("waveform contains a non-finite sample");
}

long sample_offset(double t, double t_ref, double rate)
{
    const double shift = (t - t_ref) * rate;
    const double rounded = std::round(shift);
    if (std::abs(shift - rounded) > 1e-6)
        throw ValidationError("time offset is not an integer number of samples");
    return long(rounded);
}

namespace {

void require_same_rate(const Waveform& x, const Waveform& y)
{
    if (std::abs(x.rate - y.rate) > 1e-12 * std::max(x.rate, y.rate))
        throw ValidationError("sample rate mismatch between waveforms");
}

} // namespace

cplx inner_product(const Waveform& x, const Waveform& y)
{
    require_same_rate(x, y);
    // y[j] aligns with x[j + shift]
    const long shift = sample_offset(y.t_start, x.t_start, x.rate);
    const long lo = std::max(0L, shift);
    const long hi = std::min(long(x.size()), shift + long(y.size()));
    cplx acc = 0.0;
    for (long k = lo; k < hi; ++k)
        acc += x.samples[k] * std::conj(y.samples[k - shift]);
    return acc / x.rate;
}

double nmse_db(const Waveform& reference, const Waveform& test)
{
    require_same_rate(reference, test);
    const long shift = sample_offset(test.t_start, reference.t_start, reference.rate);
    const long lo = std::min(0L, shift);
    const long hi = std::max(long(reference.size()), shift + long(test.size()));

    double err = 0.0;
    double ref = 0.0;
    for (long k = lo; k < hi; ++k) {
        const cplx r = (k >= 0 && k < long(reference.size())) ? reference.samples[k] : cplx{};
        const long j = k - shift;
        const cplx t = (j >= 0 && j < long(test.size())) ? test.samples[j] : cplx{};
        err += std::norm(t - r);
        ref += std::norm(r);
    }
    if (ref == 0.0)
        throw ValidationError("NMSE reference has zero energy");
    if (err == 0.0)
        return nmse_floor_db;
    return 10.0 * std::log10(err / ref);
}

} // namespace oddm
