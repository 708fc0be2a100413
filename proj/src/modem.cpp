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

#include "oddm/modem.hpp"

#include "oddm/dft.hpp"

#include <cmath>
#include <random>
#include <string>

namespace oddm {

SymbolFrame::SymbolFrame(int M, int N) : M_(M), N_(N)
{
    if (M < 1 || N < 1)
        throw ValidationError("symbol frame dimensions must be positive");
    data_.assign(std::size_t(M) * std::size_t(N), cplx{});
}

std::size_t SymbolFrame::index(int m, int n) const
{
    if (m < 0 || m >= M_ || n < doppler_min() || n > doppler_max())
        throw ValidationError("symbol index (" + std::to_string(m) + ", " + std::to_string(n) + ") out of range");
    return std::size_t(m) * std::size_t(N_) + std::size_t(n - doppler_min());
}

void SymbolFrame::validate() const
{
    for (const auto& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError("symbol frame contains a non-finite entry");
}

void SymbolFrame::require_shape(const OddmParams& p) const
{
    if (M_ != p.M() || N_ != p.N())
        throw ValidationError("symbol frame is " + std::to_string(M_) + "x" + std::to_string(N_) + ", parameters expect " +
                              std::to_string(p.M()) + "x" + std::to_string(p.N()));
}

SymbolFrame random_qpsk_frame(int M, int N, std::uint64_t seed)
{
    SymbolFrame f(M, N);
    std::mt19937_64 rng(seed);
    const double a = 1.0 / std::sqrt(2.0);
    for (auto& v : f.data()) {
        const auto bits = rng();
        v = {(bits & 1u) ? -a : a, (bits & 2u) ? -a : a};
    }
    return f;
}

std::string_view to_string(ModulatorPath path)
{
    switch (path) {
    case ModulatorPath::direct:
        return "direct";
    case ModulatorPath::exact:
        return "exact";
    case ModulatorPath::filtered:
        return "filtered";
    }
    return "?";
}

long frame_length(const OddmParams& p)
{
    return long(p.kappa()) * (long(p.N()) * p.M() - 1 + 2L * p.Q()) + 1;
}

namespace {

void require_pulse(const SymbolFrame& frame, const DdopPulse& u)
{
    frame.require_shape(u.params);
    frame.validate();
    if (!u.normalized)
        throw ValidationError("modulator and demodulator require a normalized DDOP");
    if (long(u.wave.size()) != ddop_length(u.params))
        throw ValidationError("DDOP length does not match its parameters");
}

Waveform empty_frame_waveform(const OddmParams& p)
{
    return Waveform(std::vector<cplx>(std::size_t(frame_length(p)), cplx{}), p.sample_rate(),
                    -double(p.pulse_half_samples()) / p.sample_rate());
}

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

long positive_mod(long a, long b)
{
    const long r = a % b;
    return r < 0 ? r + b : r;
}

// DFT bin holding Doppler index n.
std::size_t doppler_bin(int n, int N)
{
    return std::size_t(positive_mod(n, N));
}

/*
 * Groups the nonzero samples of u by their phase within one T0 period.
 * Sample k of u sits at offset r = k - Q kappa from t = 0; with P = kappa M,
 * r = c + p P. Every sample of a group shares the sub-period phase c, so one
 * N-point DFT per group covers all of them.
 */
struct ResidueLayout
{
    struct Group
    {
        long residue;
        std::vector<long> samples; // indices into u
        std::vector<long> bins;    // (p mod N) for each sample
        std::vector<cplx> twiddle; // e^{j 2 pi n c / (N P)}, indexed by DFT bin
    };
    std::vector<Group> groups;

    explicit ResidueLayout(const DdopPulse& u)
    {
        const auto& p = u.params;
        const long period = p.samples_per_t0();
        const long half = p.pulse_half_samples();
        const int N = p.N();
        std::vector<long> slot(std::size_t(period), -1);
        for (long k = 0; k < long(u.wave.size()); ++k) {
            if (u.wave.samples[std::size_t(k)] == cplx{})
                continue;
            const long r = k - half;
            const long c = positive_mod(r, period);
            if (slot[std::size_t(c)] < 0) {
                slot[std::size_t(c)] = long(groups.size());
                Group g;
                g.residue = c;
                g.twiddle.resize(std::size_t(N));
                const long big = long(N) * period;
                for (int n = p.doppler_min(); n <= p.doppler_max(); ++n) {
                    const long e = positive_mod(long(n) * c, big);
                    g.twiddle[doppler_bin(n, N)] = std::polar(1.0, 2.0 * pi * double(e) / double(big));
                }
                groups.push_back(std::move(g));
            }
            Group& g = groups[std::size_t(slot[std::size_t(c)])];
            g.samples.push_back(k);
            g.bins.push_back(positive_mod(floor_div(r - c, period), N));
        }
    }
};

} // namespace

ModulatedFrame modulate_direct(const SymbolFrame& frame, const DdopPulse& u)
{
    require_pulse(frame, u);
    const OddmParams& p = u.params;
    Waveform out = empty_frame_waveform(p);
    const long shift = p.samples_per_delay_bin();
    const double period = p.frame_duration();
    for (int m = 0; m < p.M(); ++m) {
        for (int n = p.doppler_min(); n <= p.doppler_max(); ++n) {
            const cplx x = frame.at(m, n);
            if (x == cplx{})
                continue;
            for (std::size_t k = 0; k < u.wave.size(); ++k) {
                const double t_rel = u.wave.time_at(k); // t - m dT
                out.samples[k + std::size_t(m * shift)] +=
                    x * std::polar(1.0, 2.0 * pi * n * t_rel / period) * u.wave.samples[k];
            }
        }
    }
    return {std::move(out), p, ModulatorPath::direct};
}

std::vector<cplx> doppler_idft(const SymbolFrame& frame, int m)
{
    if (m < 0 || m >= frame.M())
        throw ValidationError("delay index " + std::to_string(m) + " out of range");
    const int N = frame.N();
    std::vector<cplx> bins(static_cast<std::size_t>(N));
    for (int n = frame.doppler_min(); n <= frame.doppler_max(); ++n)
        bins[doppler_bin(n, N)] = frame.at(m, n);
    Dft idft(std::size_t(N), DftDirection::inverse);
    idft.execute(bins);
    return bins;
}

ModulatedFrame modulate_exact(const SymbolFrame& frame, const DdopPulse& u)
{
    require_pulse(frame, u);
    const OddmParams& p = u.params;
    const int N = p.N();
    const ResidueLayout layout(u);
    Waveform out = empty_frame_waveform(p);
    Dft idft(std::size_t(N), DftDirection::inverse);
    auto buf = idft.buffer();

    std::vector<cplx> row(static_cast<std::size_t>(N));
    for (int m = 0; m < p.M(); ++m) {
        bool any = false;
        for (int n = p.doppler_min(); n <= p.doppler_max(); ++n) {
            row[doppler_bin(n, N)] = frame.at(m, n);
            any = any || frame.at(m, n) != cplx{};
        }
        if (!any)
            continue;
        const long offset = long(m) * p.samples_per_delay_bin();
        for (const auto& g : layout.groups) {
            for (int b = 0; b < N; ++b)
                buf[std::size_t(b)] = row[std::size_t(b)] * g.twiddle[std::size_t(b)];
            idft.execute_buffer();
            for (std::size_t i = 0; i < g.samples.size(); ++i) {
                const long k = g.samples[i];
                out.samples[std::size_t(k + offset)] += buf[std::size_t(g.bins[i])] * u.wave.samples[std::size_t(k)];
            }
        }
    }
    return {std::move(out), p, ModulatorPath::exact};
}

ModulatedFrame modulate_filtered(const SymbolFrame& frame, const ElementaryPulse& a, const OddmParams& p)
{
    frame.require_shape(p);
    frame.validate();
    if (a.kappa != p.kappa() || a.half_len_q != p.Q())
        throw ValidationError("elementary pulse was built for different frame parameters");

    Waveform out = empty_frame_waveform(p);
    const long half = a.half_samples();
    const double scale = 1.0 / std::sqrt(double(p.N()));
    for (int m = 0; m < p.M(); ++m) {
        const auto impulses = doppler_idft(frame, m);
        for (int k = 0; k < p.N(); ++k) {
            const cplx weight = impulses[std::size_t(k)] * scale;
            if (weight == cplx{})
                continue;
            // impulse at t = k T0 + m T0/M, output index of its center:
            const long center = (long(k) * p.M() + m) * p.kappa() + half;
            for (long j = -half; j <= half; ++j)
                out.samples[std::size_t(center + j)] += weight * a.wave.samples[std::size_t(j + half)];
        }
    }
    return {std::move(out), p, ModulatorPath::filtered};
}

SymbolFrame demodulate(const Waveform& y, const DdopPulse& u)
{
    if (!u.normalized)
        throw ValidationError("modulator and demodulator require a normalized DDOP");
    if (std::abs(y.rate - u.wave.rate) > 1e-12 * u.wave.rate)
        throw ValidationError("received waveform rate does not match the pulse sample rate");
    const OddmParams& p = u.params;
    const int N = p.N();
    // frame index i corresponds to y index i - y_shift
    const long y_shift = sample_offset(y.t_start, u.wave.t_start, y.rate);
    const long y_len = long(y.size());

    const ResidueLayout layout(u);
    SymbolFrame out(p.M(), N);
    Dft dft(std::size_t(N), DftDirection::forward);
    auto buf = dft.buffer();
    std::vector<cplx> acc(static_cast<std::size_t>(N));

    for (int m = 0; m < p.M(); ++m) {
        const long offset = long(m) * p.samples_per_delay_bin();
        std::fill(acc.begin(), acc.end(), cplx{});
        for (const auto& g : layout.groups) {
            std::fill(buf.begin(), buf.end(), cplx{});
            bool any = false;
            for (std::size_t i = 0; i < g.samples.size(); ++i) {
                const long k = g.samples[i];
                const long j = k + offset - y_shift;
                if (j < 0 || j >= y_len)
                    continue;
                const cplx v = y.samples[std::size_t(j)];
                if (v == cplx{})
                    continue;
                buf[std::size_t(g.bins[i])] += v * std::conj(u.wave.samples[std::size_t(k)]);
                any = true;
            }
            if (!any)
                continue;
            dft.execute_buffer();
            for (int b = 0; b < N; ++b)
                acc[std::size_t(b)] += std::conj(g.twiddle[std::size_t(b)]) * buf[std::size_t(b)];
        }
        for (int n = p.doppler_min(); n <= p.doppler_max(); ++n)
            out.at(m, n) = acc[doppler_bin(n, N)] / y.rate;
    }
    return out;
}

} // namespace oddm
