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

#include "oddm/ddop.hpp"
#include "oddm/grid.hpp"
#include "oddm/pulse.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace oddm {

/// M x N complex symbols X[m, n], m = 0..M-1 (delay), n = -N/2..N/2-1 (Doppler).
class SymbolFrame
{
public:
    SymbolFrame(int M, int N);

    int M() const { return M_; }
    int N() const { return N_; }
    int doppler_min() const { return -(N_ / 2); }
    int doppler_max() const { return N_ - N_ / 2 - 1; }

    cplx& at(int m, int n) { return data_[index(m, n)]; }
    const cplx& at(int m, int n) const { return data_[index(m, n)]; }

    /// Row-major storage, column j holds Doppler index n = j + doppler_min().
    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    /// Throws ValidationError on non-finite entries.
    void validate() const;

    /// Throws ValidationError if the shape differs from (params.M(), params.N()).
    void require_shape(const OddmParams& params) const;

private:
    std::size_t index(int m, int n) const;

    int M_;
    int N_;
    std::vector<cplx> data_;
};

/// Unit-power QPSK symbols (+-1 +-j)/sqrt(2) drawn from a seeded mt19937_64.
SymbolFrame random_qpsk_frame(int M, int N, std::uint64_t seed);

enum class ModulatorPath { direct, exact, filtered };

std::string_view to_string(ModulatorPath path);

struct ModulatedFrame
{
    Waveform waveform;
    OddmParams params;
    ModulatorPath path;
};

/// Samples in a modulated frame: kappa (N M - 1 + 2Q) + 1, starting at t = -Q T0/M.
long frame_length(const OddmParams& params);

/// Literal double sum over (m, n) of X[m, n] e^{j 2 pi n (t - m dT)/(N T0)} u(t - m dT).
ModulatedFrame modulate_direct(const SymbolFrame& frame, const DdopPulse& u);

/// N samples of the m-th delay row at t = k T0: sum_n X[m, n] e^{j 2 pi n k / N}, no 1/N factor.
std::vector<cplx> doppler_idft(const SymbolFrame& frame, int m);

/// Pulse-shaped OFDM realization: each delay row's band-limited periodic
/// signal is evaluated exactly on the sample grid (one N-point inverse DFT
/// per sample phase) and multiplied by u(t - m dT).
ModulatedFrame modulate_exact(const SymbolFrame& frame, const DdopPulse& u);

/// Wideband filtered-OFDM approximation: the doppler_idft outputs are placed
/// as impulses on the T0/M grid (position k M + m) and linearly convolved
/// with a(t)/sqrt(N).
ModulatedFrame modulate_filtered(const SymbolFrame& frame, const ElementaryPulse& a, const OddmParams& params);

/// Correlator bank: Y[m, n] = <y(t), e^{j 2 pi n (t - m dT)/(N T0)} u(t - m dT)>.
/// `y` must share the pulse's sample rate and lie on its sample grid; samples
/// outside y's support count as zero.
SymbolFrame demodulate(const Waveform& y, const DdopPulse& u);

} // namespace oddm
