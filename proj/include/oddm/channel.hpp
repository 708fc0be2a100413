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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oddm {

struct ChannelPath
{
    cplx gain{1.0, 0.0};
    double delay_s = 0.0;    // integer multiple of the sample period
    double doppler_hz = 0.0;
};

/// Sparse delay-Doppler channel. An empty path list is a valid (all-blocking) channel.
struct ChannelSpec
{
    std::vector<ChannelPath> paths;
    std::uint64_t seed = 0;

    void validate() const;
};

/// y(t) = sum_p g_p x(t - tau_p) e^{j 2 pi nu_p (t - tau_p)}.
/// The output starts at x.t_start and is longer by the largest delay.
Waveform apply_channel(const Waveform& x, const ChannelSpec& spec);

/// Additive white Gaussian noise, specified by the one-sided PSD N0 or by Eb/N0 in dB.
class NoiseSpec
{
public:
    static NoiseSpec from_n0(double n0);
    static NoiseSpec from_ebn0_db(double ebn0_db);

    const std::optional<double>& n0() const { return n0_; }
    const std::optional<double>& ebn0_db() const { return ebn0_db_; }

private:
    std::optional<double> n0_;
    std::optional<double> ebn0_db_;
};

/// Bit energy (|x|^2 / rate) / frame_bits.
double bit_energy(const Waveform& x, long frame_bits);

/// N0 implied by the spec for this signal: either the explicit value, or Eb / 10^(ebn0/10).
double resolve_n0(const Waveform& x, const NoiseSpec& noise, long frame_bits);

/// Adds circular complex Gaussian noise of per-sample variance N0 * rate
/// (N0 * rate / 2 per real component), drawn from mt19937_64(seed).
Waveform add_noise(const Waveform& x, const NoiseSpec& noise, long frame_bits, std::uint64_t seed);

/// JSON form: {"paths":[{"gain_re":..,"gain_im":..,"delay_s":..,"doppler_hz":..}], "seed":..}
ChannelSpec channel_from_json(const std::string& text);
std::string channel_to_json(const ChannelSpec& spec);

} // namespace oddm
