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

#include "oddm/grid.hpp"

#include <string_view>

namespace oddm {

enum class PulseKind { root_raised_cosine, raised_cosine, sinc };

PulseKind parse_pulse_kind(std::string_view name); // "rrc", "rc", "sinc"
std::string_view to_string(PulseKind kind);

/// Closed-form pulse shape at x = t/Ts, peak-normalized family member
/// (sinc(0) = 1; RRC(0) = 1 - rho + 4 rho/pi). Removable singularities are
/// evaluated by their analytic limits.
double pulse_shape(PulseKind kind, double rho, double x);

/// Fourier transform of the un-truncated, unit-energy pulse with Nyquist
/// interval `ts`. Real and even. For sinc, the band edge |f| = 1/(2 ts) is
/// taken at full height so that all M+1 Fourier bins carry equal weight.
double pulse_spectrum(PulseKind kind, double rho, double ts, double f);

/// One-sided band edge (1 + rho)/(2 ts); rho is ignored for sinc.
double pulse_band_edge(PulseKind kind, double rho, double ts);

/**
 * Elementary pulse a(t) sampled at the frame sample rate on
 * [-Q Ts, +Q Ts], Ts = T0/M, and renormalized to unit discrete energy.
 * Sample j of `wave` sits at t = (j - Q kappa) / rate.
 */
struct ElementaryPulse
{
    PulseKind kind;
    double rho;
    double nyquist_interval;
    int half_len_q;
    int kappa;
    Waveform wave;

    long half_samples() const { return long(half_len_q) * kappa; }
    double at_offset(long j) const { return wave.samples[std::size_t(j + half_samples())].real(); }
};

ElementaryPulse make_elementary_pulse(const OddmParams& params, PulseKind kind);

} // namespace oddm
