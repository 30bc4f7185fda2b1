// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "nrpusch/common.hpp"

namespace nrpusch::waveform {

/// Length-31 Gold sequence c(n) with the 1600-step fast-forward, x2 seeded by c_init.
Bits gold_sequence(std::uint32_t c_init, std::size_t length);

/// XOR with gold_sequence(seed). Filler mask is carried through unchanged.
BitBlock scramble(const BitBlock& bits, std::uint32_t seed);
Bits scramble(const Bits& bits, std::uint32_t seed);

/// DMRS c_init for (slot, symbol, identity), folded from the standard layout.
std::uint32_t dmrs_c_init(int slot, int symbol, std::uint32_t n_id) noexcept;

} // namespace nrpusch::waveform
