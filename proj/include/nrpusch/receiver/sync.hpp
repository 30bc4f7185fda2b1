// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nrpusch/receiver/estimation.hpp"
#include "nrpusch/waveform/numerology.hpp"

namespace nrpusch::receiver {

using waveform::Numerology;

struct SyncEstimate {
    double cfo_hz = 0.0;
    double sto_samples = 0.0;   ///< positive = signal arrived late
    bool cfo_estimable = true;  ///< false with a single DMRS symbol
};

inline constexpr int kCfoKernelTaps = 9;

/// CFO from the phase of sum h2 * conj(h1) between the first two DMRS symbols over their time
/// separation; STO from the peak of the zero-padded IDFT of the LS pilots (quadratic refinement).
SyncEstimate estimate_sync(const ResourceGrid& rx, const PuschConfig& cfg, const Numerology& num,
                           int window_advance = -1);

/// Frequency-domain correction: CFO by a truncated Dirichlet kernel (kCfoKernelTaps) plus per-symbol
/// common phase, then STO as a per-subcarrier phase ramp.
ResourceGrid correct_sync(const ResourceGrid& rx, const SyncEstimate& est, const PuschConfig& cfg,
                          const Numerology& num, int window_advance = -1);

} // namespace nrpusch::receiver
