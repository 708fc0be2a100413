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

#include "oddm/ddop.hpp"

#include "oddm/parallel.hpp"

#include <cmath>

namespace oddm {

namespace {

double normalized_sinc(double x)
{
    if (x == 0.0)
        return 1.0;
    return std::sin(pi * x) / (pi * x);
}

} // namespace

DdopPulse DdopPulse::as_normalized() const
{
    if (normalized)
        return *this;
    DdopPulse out = *this;
    const double scale = 1.0 / std::sqrt(double(params.N()));
    for (auto& v : out.wave.samples)
        v *= scale;
    out.normalized = true;
    return out;
}

long ddop_length(const OddmParams& p)
{
    return long(p.kappa()) * (long(p.N() - 1) * p.M() + 2L * p.Q()) + 1;
}

int spectral_bin_count(const OddmParams& p, PulseKind kind)
{
    const double width = kind == PulseKind::sinc ? double(p.M()) : (1.0 + p.rho()) * p.M();
    int mc = int(std::ceil(width - 1e-9));
    if (mc % 2 != 0)
        ++mc;
    return mc;
}

DdopPulse build_ddop_timedomain(const ElementaryPulse& a, const OddmParams& p, bool normalized)
{
    if (a.kappa != p.kappa() || a.half_len_q != p.Q() ||
        std::abs(a.nyquist_interval - p.delay_resolution()) > 1e-12 * p.delay_resolution())
        throw ValidationError("elementary pulse was built for different frame parameters");

    const long len = ddop_length(p);
    const long period = p.samples_per_t0();
    std::vector<cplx> s(std::size_t(len), cplx{});
    for (int k = 0; k < p.N(); ++k) {
        const long base = k * period;
        for (std::size_t j = 0; j < a.wave.size(); ++j)
            s[std::size_t(base) + j] += a.wave.samples[j];
    }
    if (normalized) {
        const double scale = 1.0 / std::sqrt(double(p.N()));
        for (auto& v : s)
            v *= scale;
    }
    return DdopPulse{p, Waveform(std::move(s), p.sample_rate(), -double(p.pulse_half_samples()) / p.sample_rate()),
                     normalized};
}

DdopPulse build_ddop_fourier(const OddmParams& p, PulseKind kind)
{
    const long period = p.samples_per_t0();
    const int mc = spectral_bin_count(p, kind);
    const double rho = kind == PulseKind::sinc ? 0.0 : p.rho();
    const double ts = p.delay_resolution();

    std::vector<double> cos_table(static_cast<std::size_t>(period));
    for (long i = 0; i < period; ++i)
        cos_table[std::size_t(i)] = std::cos(2.0 * pi * double(i) / double(period));

    std::vector<double> bins(static_cast<std::size_t>(mc / 2 + 1));
    for (int m = 0; m <= mc / 2; ++m)
        bins[std::size_t(m)] = pulse_spectrum(kind, rho, ts, m / p.T0());

    // One period of the Fourier series; A is real and even.
    std::vector<double> one_period(static_cast<std::size_t>(period));
    for (long c = 0; c < period; ++c) {
        double acc = bins[0];
        for (int m = 1; m <= mc / 2; ++m)
            acc += 2.0 * bins[std::size_t(m)] * cos_table[std::size_t((long(m) * c) % period)];
        one_period[std::size_t(c)] = acc / p.T0();
    }

    const long len = ddop_length(p);
    const long half = p.pulse_half_samples();
    const long window_lo = -period / 2;
    const long window_hi = long(p.N()) * period - period / 2;
    std::vector<cplx> s(std::size_t(len), cplx{});
    for (long k = 0; k < len; ++k) {
        const long rel = k - half; // sample offset from t = 0
        if (rel < window_lo || rel >= window_hi)
            continue;
        s[std::size_t(k)] = one_period[std::size_t(((rel % period) + period) % period)];
    }
    return DdopPulse{p, Waveform(std::move(s), p.sample_rate(), -double(half) / p.sample_rate()), false};
}

DdopSpectrum ddop_spectrum_analytic(const OddmParams& p, PulseKind kind, std::span<const double> freqs)
{
    DdopSpectrum out;
    out.m_check = spectral_bin_count(p, kind);
    out.t_tilde = 0.5 * (2.0 * p.Q() * p.T0() / p.M() + (p.N() - 1) * p.T0());
    out.freqs.assign(freqs.begin(), freqs.end());
    out.values.resize(freqs.size());

    const double rho = kind == PulseKind::sinc ? 0.0 : p.rho();
    const double ts = p.delay_resolution();
    const int n = p.N();
    const int m_max = out.m_check / 2 + 2;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        const double f = freqs[i];
        const double envelope = pulse_spectrum(kind, rho, ts, f);
        if (envelope == 0.0) {
            out.values[i] = 0.0;
            continue;
        }
        const double x = f * n * p.T0();
        double train = 0.0;
        for (int m = -m_max; m <= m_max; ++m) {
            // e^{j 2 pi m (N-1)/2} = (-1)^{m (N-1)}
            const double sign = ((long(m) * (n - 1)) % 2 == 0) ? 1.0 : -1.0;
            train += sign * normalized_sinc(x - double(m) * n);
        }
        out.values[i] = std::polar(double(n) * envelope * train, -2.0 * pi * f * out.t_tilde);
    }
    return out;
}

cplx ambiguity_samples(const DdopPulse& u, long tau, double nu)
{
    const auto& s = u.wave.samples;
    const long len = long(s.size());
    const long lo = std::max(0L, tau);
    const long hi = std::min(len, len + tau);
    cplx acc = 0.0;
    for (long k = lo; k < hi; ++k) {
        const cplx a = s[std::size_t(k)];
        const cplx b = s[std::size_t(k - tau)];
        if (a == cplx{} || b == cplx{})
            continue;
        const double t_rel = u.wave.time_at(std::size_t(k - tau)); // t - tau
        acc += a * std::conj(b) * std::polar(1.0, -2.0 * pi * nu * t_rel);
    }
    return acc / u.wave.rate;
}

cplx ambiguity(const DdopPulse& u, double tau, double nu)
{
    return ambiguity_samples(u, sample_offset(tau, 0.0, u.wave.rate), nu);
}

double OrthogonalityReport::max_off_origin_db() const
{
    if (max_off_origin == 0.0)
        return nmse_floor_db;
    return 20.0 * std::log10(max_off_origin);
}

OrthogonalityReport orthogonality_scan(const DdopPulse& u)
{
    if (!u.normalized)
        throw ValidationError("orthogonality scan requires a normalized DDOP");
    const OddmParams& p = u.params;
    const int M = p.M();
    const int N = p.N();
    const long rows = 2L * M - 1;
    const long cols = 2L * N - 1;

    OrthogonalityReport rep;
    rep.grid.resize(std::size_t(rows * cols));
    parallel_for(std::size_t(rows), [&](std::size_t r) {
        const int m = int(r) - (M - 1);
        for (long c = 0; c < cols; ++c) {
            const int n = int(c) - (N - 1);
            const cplx v = ambiguity_samples(u, long(m) * p.samples_per_delay_bin(), n * p.doppler_resolution());
            rep.grid[std::size_t(long(r) * cols + c)] = {m, n, v};
        }
    });

    bool have = false;
    for (const auto& pt : rep.grid) {
        if (pt.m == 0 && pt.n == 0) {
            rep.origin = pt.value;
            continue;
        }
        const double mag = std::abs(pt.value);
        const bool better = !have || mag > rep.max_off_origin ||
                            (mag == rep.max_off_origin &&
                             std::pair(std::abs(pt.m), std::abs(pt.n)) < std::pair(std::abs(rep.max_m), std::abs(rep.max_n)));
        if (better) {
            rep.max_off_origin = mag;
            rep.max_m = pt.m;
            rep.max_n = pt.n;
            have = true;
        }
    }
    return rep;
}

} // namespace oddm
