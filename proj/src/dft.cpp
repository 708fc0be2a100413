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

#include "oddm/dft.hpp"

#include <algorithm>
#include <fftw3.h>
#include <mutex>
#include <utility>

namespace oddm {

namespace {
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

Dft::Dft(std::size_t size, DftDirection direction) : size_(size)
{
    if (size == 0)
        throw ValidationError("DFT size must be positive");
    std::lock_guard<std::mutex> lock(planner_mutex());
    buf_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * size));
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    plan_ = fftw_plan_dft_1d(int(size), b, b, direction == DftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                             FFTW_ESTIMATE);
}

Dft::~Dft()
{
    release();
}

Dft::Dft(Dft&& other) noexcept
    : size_(std::exchange(other.size_, 0)), buf_(std::exchange(other.buf_, nullptr)),
      plan_(std::exchange(other.plan_, nullptr))
{
}

Dft& Dft::operator=(Dft&& other) noexcept
{
    if (this != &other) {
        release();
        size_ = std::exchange(other.size_, 0);
        buf_ = std::exchange(other.buf_, nullptr);
        plan_ = std::exchange(other.plan_, nullptr);
    }
    return *this;
}

void Dft::release()
{
    if (!plan_ && !buf_)
        return;
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_)
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    if (buf_)
        fftw_free(buf_);
    plan_ = nullptr;
    buf_ = nullptr;
}

void Dft::execute_buffer()
{
    fftw_execute(static_cast<fftw_plan>(plan_));
}

void Dft::execute(std::span<cplx> data)
{
    if (data.size() != size_)
        throw ValidationError("DFT input length does not match plan size");
    std::copy(data.begin(), data.end(), buf_);
    execute_buffer();
    std::copy(buf_, buf_ + size_, data.begin());
}

} // namespace oddm
