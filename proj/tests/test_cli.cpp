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

#include <catch_amalgamated.hpp>

#include "oddm/ddop.hpp"
#include "oddm/io.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

using namespace oddm;
namespace fs = std::filesystem;

namespace {

struct Sandbox
{
    fs::path dir;

    Sandbox()
    {
        static int counter = 0;
        dir = fs::temp_directory_path() / ("oddm_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }

    fs::path operator/(const std::string& name) const { return dir / name; }

    // Runs the CLI with stdout to out.txt and stderr to err.txt; returns the exit code.
    int run(const std::string& args) const
    {
        const std::string cmd = std::string("\"") + ODDM_CLI_PATH + "\" " + args + " >\"" + (dir / "out.txt").string() +
                                "\" 2>\"" + (dir / "err.txt").string() + "\"";
        const int status = std::system(cmd.c_str());
        REQUIRE(status != -1);
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string out() const { return read_text_file(dir / "out.txt"); }
    std::string err() const { return read_text_file(dir / "err.txt"); }
    std::string file(const std::string& name) const { return read_text_file(dir / name); }
    std::string path(const std::string& name) const { return "\"" + (dir / name).string() + "\""; }
};

std::size_t line_count(const std::string& text)
{
    std::size_t n = 0;
    for (char c : text)
        n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("cli ddop - pulse train, Fourier construction and spectrum")
{
    Sandbox sb;
    REQUIRE(sb.run("ddop --M 64 --N 8 --Q 8 --rho 0.3 --kappa 8 --out " + sb.path("u.iq") + " --fourier-out " +
                   sb.path("uf.iq") + " --spectrum " + sb.path("s.csv")) == 0);
    const OddmParams p(64, 8, 1.0, 8, 0.3, 8);
    const auto u = read_iq(sb / "u.iq");
    CHECK(long(u.size()) == ddop_length(p));
    CHECK(u.rate == p.sample_rate());
    const auto uf = read_iq(sb / "uf.iq");
    CHECK(uf.rate == u.rate);

    const auto csv = sb.file("s.csv");
    CHECK(csv.rfind("f_hz,abs_u\n", 0) == 0);
    // default step 1/(4 N T0) over +-(M_check/2 + 2)/T0 with M_check = 84
    CHECK(line_count(csv) == 1 + 2 * 44 * 32 + 1);
    CHECK(sb.out().find("NMSE vs pulse train") != std::string::npos);
}

TEST_CASE("cli ddop - N = 1 gives the elementary pulse")
{
    Sandbox sb;
    REQUIRE(sb.run("ddop --M 64 --N 1 --Q 4 --rho 0.5 --out " + sb.path("a.iq")) == 0);
    const OddmParams p(64, 1, 1.0, 4, 0.5, 8);
    const auto a = make_elementary_pulse(p, PulseKind::root_raised_cosine);
    const auto u = read_iq(sb / "a.iq");
    CHECK(u.samples == a.wave.samples);
    CHECK(u.t_start == a.wave.t_start);
}

TEST_CASE("cli ddop - --normalized gives unit energy")
{
    Sandbox sb;
    REQUIRE(sb.run("ddop --M 32 --N 4 --Q 4 --rho 0.5 --normalized --out " + sb.path("u.iq")) == 0);
    CHECK(std::abs(read_iq(sb / "u.iq").energy() - 1.0) < 1e-12);
}

TEST_CASE("cli - parameter guard and --force")
{
    Sandbox sb;
    CHECK(sb.run("ddop --M 512 --N 2 --Q 200 --out " + sb.path("w.iq")) == 2);
    CHECK(sb.err().find("2Q <= M/4") != std::string::npos);
    CHECK_FALSE(fs::exists(sb / "w.iq"));
    CHECK(sb.run("ddop --M 512 --N 2 --Q 200 --force --out " + sb.path("w.iq")) == 0);
    CHECK(fs::exists(sb / "w.iq"));
}

TEST_CASE("cli orthogonality")
{
    Sandbox sb;
    REQUIRE(sb.run("orthogonality --M 16 --N 4 --Q 2 --rho 0.5 --kappa 8 --csv " + sb.path("o.csv")) == 0);
    const auto csv = sb.file("o.csv");
    CHECK(csv.rfind("m,n,abs_ambiguity\n", 0) == 0);
    CHECK(line_count(csv) == 1 + (2 * 16 - 1) * (2 * 4 - 1));
    CHECK(csv.find("\n0,0,") != std::string::npos);
    CHECK(sb.out().find("max_off_origin_db") != std::string::npos);
}

TEST_CASE("cli nmse-sweep - CSV and reproducibility")
{
    Sandbox sb;
    const std::string args = "nmse-sweep --M 64 --N 8 --q-list 4,8 --rho-list 0.3,0.9 --trials 2 --seed 3";
    REQUIRE(sb.run(args + " --csv " + sb.path("a.csv")) == 0);
    REQUIRE(sb.run(args + " --csv " + sb.path("b.csv")) == 0);
    CHECK(sb.file("a.csv") == sb.file("b.csv"));
    CHECK(line_count(sb.file("a.csv")) == 1 + 2 * 2 * 3);
    CHECK(sb.err().find("mean NMSE") != std::string::npos);

    REQUIRE(sb.run(args) == 0);
    CHECK(sb.out() == sb.file("a.csv"));

    CHECK(sb.run("nmse-sweep --M 64 --N 8 --q-list 16 --trials 1") == 2);
    CHECK(sb.run("nmse-sweep --q-list x") == 2);
}

TEST_CASE("cli loopback - reproducible JSON and frame files")
{
    Sandbox sb;
    write_text_file(sb / "ch.json",
                    R"({"paths":[{"gain_re":1,"delay_s":0,"doppler_hz":0},{"gain_re":0.2,"gain_im":0.1,"delay_s":0.03125,"doppler_hz":0.0625}]})");
    const std::string args = "loopback --M 32 --N 8 --Q 4 --rho 0.5 --seed 4 --ebn0 12 --channel " + sb.path("ch.json");
    REQUIRE(sb.run(args + " --report " + sb.path("r1.json") + " --frame-out " + sb.path("y1.json")) == 0);
    REQUIRE(sb.run(args + " --report " + sb.path("r2.json") + " --frame-out " + sb.path("y2.json")) == 0);
    CHECK(sb.file("r1.json") == sb.file("r2.json"));
    CHECK(sb.file("y1.json") == sb.file("y2.json"));
    CHECK(frame_from_json(sb.file("y1.json")).M() == 32);

    REQUIRE(sb.run(args) == 0);
    CHECK(sb.out() == sb.file("r1.json"));
}

TEST_CASE("cli loopback - input frame")
{
    Sandbox sb;
    SymbolFrame f(32, 4);
    f.at(10, 1) = 1.0;
    write_text_file(sb / "x.json", frame_to_json(f));
    REQUIRE(sb.run("loopback --M 32 --N 4 --Q 4 --rho 0.5 --frame " + sb.path("x.json") + " --frame-out " +
                   sb.path("y.json")) == 0);
    const auto y = frame_from_json(sb.file("y.json"));
    CHECK(std::abs(y.at(10, 1) - cplx{1.0}) < 1e-3);

    CHECK(sb.run("loopback --M 64 --N 4 --Q 4 --rho 0.5 --frame " + sb.path("x.json")) == 2);
}

TEST_CASE("cli - exit codes")
{
    Sandbox sb;
    CHECK(sb.run("") == 2);
    CHECK(sb.run("frobnicate") == 2);
    CHECK(sb.run("ddop --M 64 --N 3 --Q 4 --out " + sb.path("u.iq")) == 2);
    CHECK(sb.run("ddop --M 64 --N 4 --Q 4 --kind box --out " + sb.path("u.iq")) == 2);
    CHECK(sb.run("ddop --M 64 --N 4 --Q 4") == 2);
    CHECK(sb.run("loopback --M 32 --N 4 --Q 4 --ebn0 3 --n0 1") == 2);
    CHECK(sb.run("loopback --M 32 --N 4 --Q 4 --channel " + sb.path("missing.json")) == 3);
    write_text_file(sb / "bad.json", "{\"paths\": 3}");
    CHECK(sb.run("loopback --M 32 --N 4 --Q 4 --channel " + sb.path("bad.json")) == 2);
    CHECK(sb.run("ddop --M 64 --N 4 --Q 4 --out " + sb.path("nodir/u.iq")) == 3);
    CHECK(sb.run("orthogonality --help") == 0);
}
