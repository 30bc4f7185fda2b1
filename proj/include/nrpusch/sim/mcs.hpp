// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "nrpusch/waveform/modulation.hpp"

namespace nrpusch::sim {

struct McsEntry {
    int index = 0;
    waveform::Modulation modulation = waveform::Modulation::qpsk;
    double code_rate = 0.0;
    int tbs = 0;  ///< for 106 PRB, 2 layers, 12 data symbols
};

/// The evaluated subset of the MCS table.
std::span<const McsEntry> mcs_table() noexcept;

/// Throws Error for indices outside the table.
const McsEntry& lookup_mcs(int index);

} // namespace nrpusch::sim
