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

#include <span>

namespace oddm {

enum class DftDirection { forward, inverse };

/**
 * Fixed-size unscaled DFT backed by FFTW.
 *
 *   forward: X[k] = sum_n x[n] e^{-j 2 pi k n / N}
 *   inverse: x[n] = sum_k X[k] e^{+j 2 pi k n / N}   (no 1/N factor)
 *
 * Plans are created under a global lock; execute() is safe to call from
 * several threads on distinct Dft objects.
 */
class Dft
{
public:
    Dft(std::size_t size, DftDirection direction);
    ~Dft();
    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;
    Dft(Dft&& other) noexcept;
    Dft& operator=(Dft&& other) noexcept;

    std::size_t size() const { return size_; }

    /// Transform in place through the plan's internal buffer.
    void execute(std::span<cplx> data);

    /// Internal buffer; fill, call execute_buffer(), read back.
    std::span<cplx> buffer() { return {buf_, size_}; }
    void execute_buffer();

private:
    void release();

    std::size_t size_ = 0;
    cplx* buf_ = nullptr;
    void* plan_ = nullptr;
};

} // namespace oddm
