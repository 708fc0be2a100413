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

#include "oddm/pulse.hpp"

#include <cmath>
#include <string>

namespace oddm {

namespace {

// Distance to a removable singularity below which the analytic limit is used.
constexpr double singular_eps = 1e-9;

double sinc(double x)
{
    if (std::abs(x) < 1e-12)
        return 1.0;
    return std::sin(pi * x) / (pi * x);
}

double rrc_shape(double rho, double x)
{
    if (std::abs(x) < 1e-12)
        return 1.0 - rho + 4.0 * rho / pi;
    if (rho == 0.0)
        return sinc(x);
    if (std::abs(std::abs(4.0 * rho * x) - 1.0) < singular_eps) {
        const double arg = pi / (4.0 * rho);
        return rho / std::sqrt(2.0) * ((1.0 + 2.0 / pi) * std::sin(arg) + (1.0 - 2.0 / pi) * std::cos(arg));
    }
    const double num = std::sin(pi * x * (1.0 - rho)) + 4.0 * rho * x * std::cos(pi * x * (1.0 + rho));
    const double den = pi * x * (1.0 - (4.0 * rho * x) * (4.0 * rho * x));
    return num / den;
}

double rc_shape(double rho, double x)
{
    if (rho == 0.0)
        return sinc(x);
    if (std::abs(std::abs(2.0 * rho * x) - 1.0) < singular_eps)
        return pi / 4.0 * sinc(1.0 / (2.0 * rho));
    return sinc(x) * std::cos(pi * rho * x) / (1.0 - (2.0 * rho * x) * (2.0 * rho * x));
}

} // namespace

PulseKind parse_pulse_kind(std::string_view name)
{
    if (name == "rrc")
        return PulseKind::root_raised_cosine;
    if (name == "rc")
        return PulseKind::raised_cosine;
    if (name == "sinc")
        return PulseKind::sinc;
    throw ValidationError("unknown pulse kind '" + std::string(name) + "' (expected rrc, rc or sinc)");
}

std::string_view to_string(PulseKind kind)
{
    switch (kind) {
    case PulseKind::root_raised_cosine:
        return "rrc";
    case PulseKind::raised_cosine:
        return "rc";
    case PulseKind::sinc:
        return "sinc";
    }
    return "?";
}

double pulse_shape(PulseKind kind, double rho, double x)
{
    switch (kind) {
    case PulseKind::root_raised_cosine:
        return rrc_shape(rho, x);
    case PulseKind::raised_cosine:
        return rc_shape(rho, x);
    case PulseKind::sinc:
        return sinc(x);
    }
    return 0.0;
}

double pulse_band_edge(PulseKind kind, double rho, double ts)
{
    return (kind == PulseKind::sinc ? 1.0 : 1.0 + rho) / (2.0 * ts);
}

double pulse_spectrum(PulseKind kind, double rho, double ts, double f)
{
    const double af = std::abs(f);
    if (kind == PulseKind::sinc || rho == 0.0)
        return af <= 0.5 / ts ? std::sqrt(ts) : 0.0;

    const double flat_edge = (1.0 - rho) / (2.0 * ts);
    const double stop_edge = (1.0 + rho) / (2.0 * ts);
    if (af > stop_edge)
        return 0.0;

    if (kind == PulseKind::root_raised_cosine) {
        if (af <= flat_edge)
            return std::sqrt(ts);
        return std::sqrt(ts) * std::cos(pi * ts / (2.0 * rho) * (af - flat_edge));
    }

    // raised cosine, scaled to unit energy: integral of RC^2 is (1 - rho/4)/ts
    const double scale = std::sqrt(ts / (1.0 - rho / 4.0));
    if (af <= flat_edge)
        return scale;
    return scale * 0.5 * (1.0 + std::cos(pi * ts / rho * (af - flat_edge)));
}

ElementaryPulse make_elementary_pulse(const OddmParams& params, PulseKind kind)
{
    const long half = params.pulse_half_samples();
    const double rho = kind == PulseKind::sinc ? 0.0 : params.rho();
    std::vector<cplx> s(static_cast<std::size_t>(2 * half + 1));
    double energy = 0.0;
    for (long j = -half; j <= half; ++j) {
        const double v = pulse_shape(kind, rho, double(j) / params.kappa());
        s[std::size_t(j + half)] = v;
        energy += v * v;
    }
    const double scale = 1.0 / std::sqrt(energy / params.sample_rate());
    for (auto& v : s)
        v *= scale;
    // Enforce exact even symmetry after scaling.
    for (long j = 1; j <= half; ++j)
        s[std::size_t(half - j)] = s[std::size_t(half + j)];

    const double ts = params.delay_resolution();
    return ElementaryPulse{kind,
                           rho,
                           ts,
                           params.Q(),
                           params.kappa(),
                           Waveform(std::move(s), params.sample_rate(), -double(half) / params.sample_rate())};
}

} // namespace oddm
