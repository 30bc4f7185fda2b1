// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nrpusch/waveform/grid.hpp"

namespace nrpusch::waveform {

using SampleMatrix = Eigen::Matrix<cf64, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Per-antenna sample streams (one row per antenna).
struct TimeSignal {
    SampleMatrix samples;
    double sample_rate = 0.0;
    int group_delay = 0;  ///< samples of transmit-filter delay to skip at the receiver

    int n_antennas() const noexcept { return static_cast<int>(samples.rows()); }
    Eigen::Index length() const noexcept { return samples.cols(); }
};

/// Signed FFT bin of allocation subcarrier k (allocation centred on DC when first_prb = 0).
int fft_bin(const PuschConfig& cfg, int k) noexcept;

/// Unitary IFFT per symbol, CP prepended, symbols concatenated. One row per grid plane.
TimeSignal ofdm_modulate(const ResourceGrid& grid, const PuschConfig& cfg, const Numerology& num);

struct DemodOptions {
    int window_advance = -1;  ///< samples the FFT window starts before the CP end; -1 = cp_short/2
    int timing_offset = 0;    ///< known integer delay of the signal; moves every window later
};

/// CP removal and unitary FFT per symbol, window advance phase-compensated, allocation extracted.
ResourceGrid ofdm_demodulate(const TimeSignal& sig, const PuschConfig& cfg, const Numerology& num,
                             const DemodOptions& opts = {});

} // namespace nrpusch::waveform
