// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/sim/mcs.hpp"

#include <array>

#include <fmt/format.h>

namespace nrpusch::sim {

namespace {

using waveform::Modulation;

constexpr std::array<McsEntry, 5> kTable{{
    {0, Modulation::qpsk, 0.117, 7176},
    {5, Modulation::qpsk, 0.370, 22536},
    {10, Modulation::qam16, 0.332, 40976},
    {15, Modulation::qam16, 0.602, 73776},
    {20, Modulation::qam64, 0.554, 102416},
}};

} // namespace

std::span<const McsEntry> mcs_table() noexcept { return kTable; }

const McsEntry& lookup_mcs(int index)
{
    for (const auto& e : kTable)
        if (e.index == index)
            return e;
    throw Error(fmt::format("unknown MCS index {}", index));
}

} // namespace nrpusch::sim
