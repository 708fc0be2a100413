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
#include "oddm/pulse.hpp"

#include <span>
#include <vector>

namespace oddm {

/**
 * Sampled delay-Doppler orthogonal pulse: a train of N elementary pulses
 * spaced T0 apart. Sample 0 sits at t = -Q T0/M.
 *
 * `normalized == false` holds the literal sum of elementary pulses
 * (energy ~ N); the normalized form is scaled by 1/sqrt(N) to unit energy
 * and is what the ambiguity function, modulators and demodulator expect.
 */
struct DdopPulse
{
    OddmParams params;
    Waveform wave;
    bool normalized = false;

    /// Unit-energy copy (scales the literal train by 1/sqrt(N)).
    DdopPulse as_normalized() const;
};

/// Number of samples in a DDOP: kappa ((N-1) M + 2Q) + 1.
long ddop_length(const OddmParams& params);

/// Smallest even integer >= (1 + rho) M (rho ignored for sinc).
int spectral_bin_count(const OddmParams& params, PulseKind kind);

/// u(t) = sum_{k=0}^{N-1} a(t - k T0), optionally scaled by 1/sqrt(N).
DdopPulse build_ddop_timedomain(const ElementaryPulse& a, const OddmParams& params, bool normalized);

/// u(t) = (1/T0) sum_{|m| <= Mc/2} A(m/T0) e^{j 2 pi m t/T0}, windowed to
/// [-T0/2, N T0 - T0/2), sampled on the same grid as build_ddop_timedomain.
/// A(f) is the transform of the un-truncated elementary pulse. Literal scale.
DdopPulse build_ddop_fourier(const OddmParams& params, PulseKind kind);

struct DdopSpectrum
{
    std::vector<double> freqs;
    std::vector<cplx> values;
    int m_check = 0;      // number of spectral bins minus one
    double t_tilde = 0.0; // half the DDOP duration; phase reference at the pulse start
};

/**
 * Closed-form spectrum of the literal (unnormalized) DDOP with time origin at
 * its first sample:
 *
 *   U(f) = e^{-j 2 pi f Tt} N A(f) sum_{|m| <= Mc/2 + 2} (-1)^{m (N-1)} sinc(f N T0 - m N)
 *
 * where N sinc(f N T0) is the transform of the N T0 window over T0.
 */
DdopSpectrum ddop_spectrum_analytic(const OddmParams& params, PulseKind kind, std::span<const double> freqs);

/// A(tau, nu) = <u(t), u(t - tau) e^{j 2 pi nu (t - tau)}> on the sample grid.
/// `tau_samples` is an integer shift in samples.
cplx ambiguity_samples(const DdopPulse& u, long tau_samples, double nu);

/// Same, with tau in seconds; throws ValidationError if tau is not on the sample grid.
cplx ambiguity(const DdopPulse& u, double tau, double nu);

struct AmbiguityPoint
{
    int m;
    int n;
    cplx value;
};

struct OrthogonalityReport
{
    cplx origin;               // A(0, 0)
    double max_off_origin = 0; // max |A(m dT, n dF)| over (m, n) != (0, 0)
    int max_m = 0;
    int max_n = 0;
    std::vector<AmbiguityPoint> grid; // row-major, m = -(M-1)..M-1 outer, n = -(N-1)..N-1 inner

    double max_off_origin_db() const;
};

/// Evaluates A(m T0/M, n/(N T0)) for |m| <= M-1, |n| <= N-1. Requires a normalized pulse.
/// Ties in the maximum resolve to the lowest (|m|, |n|) lexicographically.
OrthogonalityReport orthogonality_scan(const DdopPulse& u);

} // namespace oddm
