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
#include "oddm/modem.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace oddm {

/// File could not be read or written, or its bytes are not in the expected format.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/*
 * Binary IQ layout, all integers and floats little-endian:
 *
 *   offset 0   4 bytes  magic "ODDM"
 *   offset 4   u8       version (1)
 *   offset 5   u32      sample count K
 *   offset 9   K x (f64 re, f64 im)
 *   trailer    f64 rate, f64 t_start
 */
inline constexpr unsigned char iq_format_version = 1;

std::string encode_iq(const Waveform& w);
Waveform decode_iq(const std::string& bytes);

void write_iq(const std::filesystem::path& path, const Waveform& w);
Waveform read_iq(const std::filesystem::path& path);

/// {"M":..,"N":..,"doppler_index_order":"-N/2..N/2-1","re":[[..]],"im":[[..]]}; re[m][j] holds n = j - N/2.
std::string frame_to_json(const SymbolFrame& frame);
SymbolFrame frame_from_json(const std::string& text);

/// Shortest round-trip decimal form, '.' separator, independent of the C locale.
std::string format_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace oddm
