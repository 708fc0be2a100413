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

#include "oddm/channel.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace oddm {

void ChannelSpec::validate() const
{
    for (const auto& path : paths) {
        if (!std::isfinite(path.gain.real()) || !std::isfinite(path.gain.imag()))
            throw ValidationError("channel path gain must be finite");
        if (!(path.delay_s >= 0.0) || !std::isfinite(path.delay_s))
            throw ValidationError("channel path delay must be finite and non-negative");
        if (!std::isfinite(path.doppler_hz))
            throw ValidationError("channel path Doppler must be finite");
    }
}

Waveform apply_channel(const Waveform& x, const ChannelSpec& spec)
{
    spec.validate();
    std::vector<long> delays;
    delays.reserve(spec.paths.size());
    long max_delay = 0;
    for (const auto& path : spec.paths) {
        const long d = sample_offset(path.delay_s, 0.0, x.rate);
        delays.push_back(d);
        max_delay = std::max(max_delay, d);
    }

    std::vector<cplx> y(x.size() + std::size_t(max_delay), cplx{});
    for (std::size_t p = 0; p < spec.paths.size(); ++p) {
        const auto& path = spec.paths[p];
        const long d = delays[p];
        for (std::size_t k = 0; k < x.size(); ++k) {
            // output sample k + d sits at t; t - tau is the input sample time
            const double t_minus_tau = x.time_at(k);
            const cplx rot = path.doppler_hz == 0.0 ? cplx{1.0, 0.0}
                                                    : std::polar(1.0, 2.0 * pi * path.doppler_hz * t_minus_tau);
            y[k + std::size_t(d)] += path.gain * x.samples[k] * rot;
        }
    }
    return Waveform(std::move(y), x.rate, x.t_start);
}

NoiseSpec NoiseSpec::from_n0(double n0)
{
    if (!(n0 >= 0.0) || !std::isfinite(n0))
        throw ValidationError("N0 must be finite and non-negative");
    NoiseSpec s;
    s.n0_ = n0;
    return s;
}

NoiseSpec NoiseSpec::from_ebn0_db(double ebn0_db)
{
    if (std::isnan(ebn0_db))
        throw ValidationError("Eb/N0 must be a number");
    NoiseSpec s;
    s.ebn0_db_ = ebn0_db;
    return s;
}

double bit_energy(const Waveform& x, long frame_bits)
{
    if (frame_bits <= 0)
        throw ValidationError("frame_bits must be positive");
    return x.energy() / double(frame_bits);
}

double resolve_n0(const Waveform& x, const NoiseSpec& noise, long frame_bits)
{
    if (noise.n0())
        return *noise.n0();
    const double ebn0_db = *noise.ebn0_db();
    const double eb = bit_energy(x, frame_bits);
    if (eb == 0.0)
        throw ValidationError("Eb/N0 noise requires a signal with non-zero energy");
    if (ebn0_db == std::numeric_limits<double>::infinity())
        return 0.0;
    return eb / std::pow(10.0, ebn0_db / 10.0);
}

Waveform add_noise(const Waveform& x, const NoiseSpec& noise, long frame_bits, std::uint64_t seed)
{
    const double n0 = resolve_n0(x, noise, frame_bits);
    if (n0 == 0.0)
        return x;
    const double sigma = std::sqrt(n0 * x.rate / 2.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    Waveform y = x;
    for (auto& v : y.samples) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v += cplx{re, im};
    }
    return y;
}

ChannelSpec channel_from_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("channel JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("paths") || !doc["paths"].is_array())
        throw ValidationError("channel JSON: expected an object with a \"paths\" array");

    auto number = [](const nlohmann::json& obj, const char* key, bool required) -> double {
        if (!obj.contains(key)) {
            if (required)
                throw ValidationError(std::string("channel JSON: path is missing \"") + key + "\"");
            return 0.0;
        }
        if (!obj[key].is_number())
            throw ValidationError(std::string("channel JSON: \"") + key + "\" must be a number");
        return obj[key].get<double>();
    };

    ChannelSpec spec;
    for (const auto& item : doc["paths"]) {
        if (!item.is_object())
            throw ValidationError("channel JSON: each path must be an object");
        ChannelPath path;
        path.gain = {number(item, "gain_re", true), number(item, "gain_im", false)};
        path.delay_s = number(item, "delay_s", true);
        path.doppler_hz = number(item, "doppler_hz", false);
        spec.paths.push_back(path);
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0))
            throw ValidationError("channel JSON: \"seed\" must be a non-negative integer");
        spec.seed = doc["seed"].get<std::uint64_t>();
    }
    spec.validate();
    return spec;
}

std::string channel_to_json(const ChannelSpec& spec)
{
    nlohmann::json doc;
    doc["paths"] = nlohmann::json::array();
    for (const auto& p : spec.paths)
        doc["paths"].push_back(
            {{"gain_re", p.gain.real()}, {"gain_im", p.gain.imag()}, {"delay_s", p.delay_s}, {"doppler_hz", p.doppler_hz}});
    doc["seed"] = spec.seed;
    return doc.dump(2);
}

} // namespace oddm
