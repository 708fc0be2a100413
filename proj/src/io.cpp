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

#include "oddm/io.hpp"

#include "json.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace oddm {

namespace {

constexpr char iq_magic[4] = {'O', 'D', 'D', 'M'};

void put_u32(std::string& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(char((v >> (8 * i)) & 0xffu));
}

void put_f64(std::string& out, double v)
{
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i)
        out.push_back(char((bits >> (8 * i)) & 0xffu));
}

std::uint64_t get_le(const std::string& in, std::size_t pos, int width)
{
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i)
        v |= std::uint64_t(static_cast<unsigned char>(in[pos + std::size_t(i)])) << (8 * i);
    return v;
}

double get_f64(const std::string& in, std::size_t pos)
{
    return std::bit_cast<double>(get_le(in, pos, 8));
}

} // namespace

std::string encode_iq(const Waveform& w)
{
    if (w.size() > std::numeric_limits<std::uint32_t>::max())
        throw IoError("waveform too long for the IQ format");
    std::string out;
    out.reserve(9 + 16 * w.size() + 16);
    out.append(iq_magic, 4);
    out.push_back(char(iq_format_version));
    put_u32(out, std::uint32_t(w.size()));
    for (const auto& v : w.samples) {
        put_f64(out, v.real());
        put_f64(out, v.imag());
    }
    put_f64(out, w.rate);
    put_f64(out, w.t_start);
    return out;
}

Waveform decode_iq(const std::string& in)
{
    if (in.size() < 9 || std::memcmp(in.data(), iq_magic, 4) != 0)
        throw IoError("not an ODDM IQ file (bad magic)");
    if (static_cast<unsigned char>(in[4]) != iq_format_version)
        throw IoError("unsupported IQ file version " + std::to_string(static_cast<unsigned char>(in[4])));
    const auto count = std::size_t(get_le(in, 5, 4));
    if (in.size() != 9 + 16 * count + 16)
        throw IoError("IQ file size does not match its sample count");
    std::vector<cplx> s(count);
    for (std::size_t k = 0; k < count; ++k)
        s[k] = {get_f64(in, 9 + 16 * k), get_f64(in, 9 + 16 * k + 8)};
    const std::size_t trailer = 9 + 16 * count;
    try {
        return Waveform(std::move(s), get_f64(in, trailer), get_f64(in, trailer + 8));
    } catch (const ValidationError& e) {
        throw IoError(std::string("IQ file holds an invalid waveform: ") + e.what());
    }
}

void write_iq(const std::filesystem::path& path, const Waveform& w)
{
    write_text_file(path, encode_iq(w));
}

Waveform read_iq(const std::filesystem::path& path)
{
    return decode_iq(read_text_file(path));
}

std::string frame_to_json(const SymbolFrame& frame)
{
    nlohmann::json doc;
    doc["M"] = frame.M();
    doc["N"] = frame.N();
    doc["doppler_index_order"] = "-N/2..N/2-1";
    auto re = nlohmann::json::array();
    auto im = nlohmann::json::array();
    for (int m = 0; m < frame.M(); ++m) {
        auto row_re = nlohmann::json::array();
        auto row_im = nlohmann::json::array();
        for (int n = frame.doppler_min(); n <= frame.doppler_max(); ++n) {
            row_re.push_back(frame.at(m, n).real());
            row_im.push_back(frame.at(m, n).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    doc["re"] = std::move(re);
    doc["im"] = std::move(im);
    return doc.dump();
}

SymbolFrame frame_from_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("frame JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("M") || !doc.contains("N") || !doc["M"].is_number_integer() ||
        !doc["N"].is_number_integer())
        throw ValidationError("frame JSON: integer fields \"M\" and \"N\" are required");
    const int M = doc["M"].get<int>();
    const int N = doc["N"].get<int>();
    if (M < 1 || N < 1)
        throw ValidationError("frame JSON: M and N must be positive");
    SymbolFrame frame(M, N);
    for (const char* key : {"re", "im"}) {
        if (!doc.contains(key) || !doc[key].is_array() || doc[key].size() != std::size_t(M))
            throw ValidationError(std::string("frame JSON: \"") + key + "\" must be an array of M rows");
        for (int m = 0; m < M; ++m) {
            const auto& row = doc[key][std::size_t(m)];
            if (!row.is_array() || row.size() != std::size_t(N))
                throw ValidationError(std::string("frame JSON: each \"") + key + "\" row must hold N numbers");
            for (int j = 0; j < N; ++j) {
                if (!row[std::size_t(j)].is_number())
                    throw ValidationError("frame JSON: entries must be numbers");
                cplx& v = frame.at(m, j + frame.doppler_min());
                const double x = row[std::size_t(j)].get<double>();
                v = key[0] == 'r' ? cplx{x, v.imag()} : cplx{v.real(), x};
            }
        }
    }
    frame.validate();
    return frame;
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("error while reading '" + path.string() + "'");
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), std::streamsize(content.size()));
    if (!out)
        throw IoError("error while writing '" + path.string() + "'");
}

} // namespace oddm
