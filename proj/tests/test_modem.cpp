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

#include "oddm/modem.hpp"

#include <cmath>
#include <random>

using namespace oddm;
using Catch::Matchers::WithinAbs;

namespace {

struct Desk
{
    OddmParams params{64, 16, 1.0, 8, 0.3, 8};
    ElementaryPulse a = make_elementary_pulse(params, PulseKind::root_raised_cosine);
    DdopPulse u = build_ddop_timedomain(a, params, true);
};

double max_abs_diff(const std::vector<cplx>& x, const std::vector<cplx>& y)
{
    REQUIRE(x.size() == y.size());
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

SymbolFrame random_gaussian_frame(int M, int N, std::uint64_t seed)
{
    SymbolFrame f(M, N);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    for (auto& v : f.data())
        v = {g(rng), g(rng)};
    return f;
}

} // namespace

TEST_CASE("SymbolFrame - indexing and shape checks")
{
    SymbolFrame f(4, 8);
    CHECK(f.doppler_min() == -4);
    CHECK(f.doppler_max() == 3);
    f.at(3, -4) = 1.0;
    CHECK(f.data()[3 * 8 + 0] == cplx{1.0});
    CHECK_THROWS_AS(f.at(4, 0), ValidationError);
    CHECK_THROWS_AS(f.at(0, 4), ValidationError);
    CHECK_THROWS_AS(f.require_shape(OddmParams(4, 16, 1.0, 1, 0.1, 8, true)), ValidationError);
}

TEST_CASE("random_qpsk_frame - unit power, deterministic")
{
    const auto a = random_qpsk_frame(32, 8, 3);
    const auto b = random_qpsk_frame(32, 8, 3);
    CHECK(a.data() == b.data());
    for (const auto& v : a.data())
        CHECK_THAT(std::norm(v), WithinAbs(1.0, 1e-15));
    CHECK(a.data() != random_qpsk_frame(32, 8, 4).data());
}

TEST_CASE("doppler_idft")
{
    SymbolFrame f(2, 8);
    SECTION("DC bin gives a constant row")
    {
        f.at(1, 0) = 1.0;
        for (const auto& v : doppler_idft(f, 1))
            CHECK(std::abs(v - cplx{1.0}) < 1e-15);
    }
    SECTION("all-ones row gives N at index 0")
    {
        for (int n = -4; n < 4; ++n)
            f.at(0, n) = 1.0;
        const auto x = doppler_idft(f, 0);
        CHECK(std::abs(x[0] - cplx{8.0}) < 1e-14);
        for (std::size_t k = 1; k < x.size(); ++k)
            CHECK(std::abs(x[k]) < 1e-14);
    }
    SECTION("random row against the direct sum")
    {
        const auto g = random_gaussian_frame(3, 16, 9);
        for (int m = 0; m < 3; ++m) {
            const auto fast = doppler_idft(g, m);
            for (int k = 0; k < 16; ++k) {
                cplx direct = 0.0;
                for (int n = -8; n < 8; ++n)
                    direct += g.at(m, n) * std::polar(1.0, 2.0 * pi * n * k / 16.0);
                CHECK(std::abs(fast[std::size_t(k)] - direct) < 1e-10);
            }
        }
    }
    CHECK_THROWS_AS(doppler_idft(f, 2), ValidationError);
    CHECK_THROWS_AS(doppler_idft(f, -1), ValidationError);
}

TEST_CASE("modulate_direct - elementary frames")
{
    const Desk d;
    const auto& p = d.params;

    const auto zero = modulate_direct(SymbolFrame(p.M(), p.N()), d.u);
    REQUIRE(long(zero.waveform.size()) == frame_length(p));
    for (const auto& v : zero.waveform.samples)
        CHECK(v == cplx{});

    SymbolFrame one(p.M(), p.N());
    one.at(0, 0) = 1.0;
    const auto x = modulate_direct(one, d.u);
    CHECK(x.waveform.t_start == d.u.wave.t_start);
    for (std::size_t k = 0; k < x.waveform.size(); ++k) {
        const cplx expect = k < d.u.wave.size() ? d.u.wave.samples[k] : cplx{};
        CHECK(x.waveform.samples[k] == expect);
    }

    const int m0 = 5, n0 = -3;
    SymbolFrame shifted(p.M(), p.N());
    shifted.at(m0, n0) = 1.0;
    const auto y = modulate_direct(shifted, d.u);
    const long lag = m0 * p.samples_per_delay_bin();
    for (std::size_t k = 0; k < y.waveform.size(); ++k) {
        const long j = long(k) - lag;
        cplx expect{};
        if (j >= 0 && j < long(d.u.wave.size())) {
            const double t_rel = y.waveform.time_at(k) - m0 * p.delay_resolution();
            expect = std::polar(1.0, 2.0 * pi * n0 * t_rel / p.frame_duration()) * d.u.wave.samples[std::size_t(j)];
        }
        CHECK(std::abs(y.waveform.samples[k] - expect) < 1e-12);
    }
}

TEST_CASE("modulate_exact - agrees with the direct double sum")
{
    const Desk d;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto X = random_qpsk_frame(d.params.M(), d.params.N(), seed);
        const auto direct = modulate_direct(X, d.u);
        const auto exact = modulate_exact(X, d.u);
        CHECK(exact.path == ModulatorPath::exact);
        CHECK(nmse_db(direct.waveform, exact.waveform) < -100.0);
    }

    SymbolFrame one(d.params.M(), d.params.N());
    one.at(0, 0) = 1.0;
    const auto x = modulate_exact(one, d.u);
    for (std::size_t k = 0; k < d.u.wave.size(); ++k)
        CHECK(std::abs(x.waveform.samples[k] - d.u.wave.samples[k]) < 1e-15);
}

TEST_CASE("modulators are linear")
{
    const Desk d;
    const auto X = random_gaussian_frame(d.params.M(), d.params.N(), 21);
    const auto Y = random_gaussian_frame(d.params.M(), d.params.N(), 22);
    const cplx alpha{0.7, -1.2}, beta{-0.3, 0.4};
    SymbolFrame Z(d.params.M(), d.params.N());
    for (std::size_t i = 0; i < Z.data().size(); ++i)
        Z.data()[i] = alpha * X.data()[i] + beta * Y.data()[i];

    auto combine = [&](const ModulatedFrame& x, const ModulatedFrame& y) {
        Waveform w = x.waveform;
        for (std::size_t k = 0; k < w.size(); ++k)
            w.samples[k] = alpha * x.waveform.samples[k] + beta * y.waveform.samples[k];
        return w;
    };
    auto rel_err = [](const Waveform& ref, const Waveform& test) { return std::pow(10.0, nmse_db(ref, test) / 20.0); };

    CHECK(rel_err(modulate_direct(Z, d.u).waveform, combine(modulate_direct(X, d.u), modulate_direct(Y, d.u))) < 1e-9);
    CHECK(rel_err(modulate_exact(Z, d.u).waveform, combine(modulate_exact(X, d.u), modulate_exact(Y, d.u))) < 1e-9);
    CHECK(rel_err(modulate_filtered(Z, d.a, d.params).waveform,
                  combine(modulate_filtered(X, d.a, d.params), modulate_filtered(Y, d.a, d.params))) < 1e-9);
}

TEST_CASE("modulators are covariant under a one-bin delay shift")
{
    const Desk d;
    const auto& p = d.params;
    auto X = random_qpsk_frame(p.M(), p.N(), 8);
    for (int n = p.doppler_min(); n <= p.doppler_max(); ++n)
        X.at(p.M() - 1, n) = 0.0;
    SymbolFrame moved(p.M(), p.N());
    for (int m = 0; m + 1 < p.M(); ++m)
        for (int n = p.doppler_min(); n <= p.doppler_max(); ++n)
            moved.at(m + 1, n) = X.at(m, n);

    const long lag = p.samples_per_delay_bin();
    auto check_shift = [&](const Waveform& base, const Waveform& shifted) {
        double worst = 0.0;
        for (std::size_t k = std::size_t(lag); k < shifted.size(); ++k)
            worst = std::max(worst, std::abs(shifted.samples[k] - base.samples[k - std::size_t(lag)]));
        return worst;
    };
    CHECK(check_shift(modulate_exact(X, d.u).waveform, modulate_exact(moved, d.u).waveform) < 1e-11);
    CHECK(check_shift(modulate_filtered(X, d.a, p).waveform, modulate_filtered(moved, d.a, p).waveform) < 1e-11);
}

TEST_CASE("modulate_filtered")
{
    const Desk d;
    const auto& p = d.params;

    SECTION("single symbol: report the approximation error")
    {
        SymbolFrame one(p.M(), p.N());
        one.at(10, 3) = 1.0;
        const auto exact = modulate_exact(one, d.u);
        const auto filt = modulate_filtered(one, d.a, p);
        REQUIRE(filt.waveform.size() == exact.waveform.size());
        const double gap = nmse_db(exact.waveform, filt.waveform);
        INFO("single-symbol NMSE filtered vs exact: " << gap << " dB");
        CHECK(std::isfinite(gap));
        CHECK(gap < -20.0);
    }
    SECTION("DC-only frame is reproduced exactly")
    {
        // n = 0 carries no phase ramp, so the filtered path has no approximation error
        SymbolFrame dc(p.M(), p.N());
        dc.at(7, 0) = cplx{0.5, -0.5};
        CHECK(nmse_db(modulate_exact(dc, d.u).waveform, modulate_filtered(dc, d.a, p).waveform) < -250.0);
    }
    SECTION("M = 512, N = 32 operating point")
    {
        const OddmParams big(512, 32, 1.0, 16, 0.5, 8);
        const auto a = make_elementary_pulse(big, PulseKind::root_raised_cosine);
        const auto u = build_ddop_timedomain(a, big, true);
        const auto X = random_qpsk_frame(big.M(), big.N(), 1);
        CHECK(nmse_db(modulate_exact(X, u).waveform, modulate_filtered(X, a, big).waveform) < -45.0);
    }
    SECTION("errors")
    {
        CHECK_THROWS_AS(modulate_filtered(SymbolFrame(8, 16), d.a, p), ValidationError);
        const auto other = make_elementary_pulse(p.with_kappa(4), PulseKind::root_raised_cosine);
        CHECK_THROWS_AS(modulate_filtered(SymbolFrame(p.M(), p.N()), other, p), ValidationError);
    }
}

TEST_CASE("modulators validate their inputs")
{
    const Desk d;
    CHECK_THROWS_AS(modulate_direct(SymbolFrame(8, 16), d.u), ValidationError);
    CHECK_THROWS_AS(modulate_exact(SymbolFrame(64, 8), d.u), ValidationError);
    const auto raw = build_ddop_timedomain(d.a, d.params, false);
    CHECK_THROWS_AS(modulate_exact(SymbolFrame(64, 16), raw), ValidationError);
    CHECK_THROWS_AS(demodulate(Waveform({1.0}, d.params.sample_rate(), 0.0), raw), ValidationError);
}

TEST_CASE("demodulate - correlator bank equals the inner-product definition")
{
    const OddmParams p(16, 4, 1.0, 2, 0.4, 4);
    const auto u = build_ddop_timedomain(make_elementary_pulse(p, PulseKind::root_raised_cosine), p, true);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    std::vector<cplx> s(std::size_t(frame_length(p) + 20));
    for (auto& v : s)
        v = {g(rng), g(rng)};
    const Waveform y(std::move(s), p.sample_rate(), u.wave.t_start - 7.0 / p.sample_rate());

    const auto Y = demodulate(y, u);
    for (int m = 0; m < p.M(); ++m)
        for (int n = p.doppler_min(); n <= p.doppler_max(); ++n) {
            Waveform basis = u.wave;
            basis.t_start += m * p.delay_resolution();
            for (std::size_t k = 0; k < basis.size(); ++k)
                basis.samples[k] *= std::polar(1.0, 2.0 * pi * n * u.wave.time_at(k) / p.frame_duration());
            CHECK(std::abs(Y.at(m, n) - inner_product(y, basis)) < 1e-12);
        }
}

TEST_CASE("demodulate - elementary inputs")
{
    const OddmParams p(128, 8, 1.0, 16, 0.5, 8);
    const auto u = build_ddop_timedomain(make_elementary_pulse(p, PulseKind::root_raised_cosine), p, true);

    const auto zero = demodulate(Waveform(std::vector<cplx>(std::size_t(frame_length(p))), p.sample_rate(), u.wave.t_start), u);
    for (const auto& v : zero.data())
        CHECK(v == cplx{});

    const auto Y = demodulate(u.wave, u);
    CHECK(std::abs(Y.at(0, 0) - cplx{1.0}) < 1e-6);
    for (int m = 0; m < p.M(); ++m)
        for (int n = p.doppler_min(); n <= p.doppler_max(); ++n)
            if (m != 0 || n != 0)
                CHECK(std::abs(Y.at(m, n)) < 1e-4);

    Waveform off_grid = u.wave;
    off_grid.t_start += 0.5 / p.sample_rate();
    CHECK_THROWS_AS(demodulate(off_grid, u), ValidationError);
    Waveform wrong_rate = u.wave;
    wrong_rate.rate *= 2.0;
    CHECK_THROWS_AS(demodulate(wrong_rate, u), ValidationError);
}

TEST_CASE("demodulate - round trip error is bounded by the off-grid ambiguity")
{
    const Desk d;
    const auto X = random_qpsk_frame(d.params.M(), d.params.N(), 5);
    const auto Y = demodulate(modulate_exact(X, d.u).waveform, d.u);

    // Y - X = sum over (m', n') != (m, n) of X[m', n'] times a phase-rotated ambiguity sample.
    const auto scan = orthogonality_scan(d.u);
    double bound = 0.0;
    for (const auto& pt : scan.grid)
        if (pt.m != 0 || pt.n != 0)
            bound += std::abs(pt.value);
    const double err = max_abs_diff(Y.data(), X.data());
    INFO("round-trip max error " << err << ", ambiguity bound " << bound);
    CHECK(err <= bound);
    CHECK(std::abs(scan.origin - cplx{1.0}) < 1e-10);
}
