// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string_view>

#include "nrpusch/common.hpp"

namespace nrpusch::waveform {

enum class Modulation { qpsk, qam16, qam64 };

int bits_per_symbol(Modulation m) noexcept;
Modulation modulation_from_order(int qm);
std::string_view modulation_name(Modulation m) noexcept;

/// Per-axis PAM amplitude (unnormalized) for the Gray label bits of one axis,
/// most significant first: 1 bit -> +-1, 2 bits -> +-1,+-3, 3 bits -> +-1..+-7.
int pam_level(std::span<const std::uint8_t> axis_bits) noexcept;

/// Scale making E|x|^2 = 1: 1/sqrt(2), 1/sqrt(10), 1/sqrt(42).
double constellation_scale(Modulation m) noexcept;

/// Gray-mapped symbols; |bits| must be a multiple of Q_m.
Eigen::VectorXcd map_symbols(std::span<const std::uint8_t> bits, Modulation m);

/// All 2^Q_m points, indexed by the label read MSB-first (b0 is the top bit).
Eigen::VectorXcd constellation(Modulation m);

} // namespace nrpusch::waveform
