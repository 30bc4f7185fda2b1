// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "nrpusch/common.hpp"

namespace nrpusch::transport {

/// CRC24A 0x864CFB (transport block), CRC24B 0x800063 (code block), CRC16 0x1021.
enum class CrcKind { crc24a, crc24b, crc16 };

int crc_length(CrcKind kind) noexcept;
std::uint32_t crc_polynomial(CrcKind kind) noexcept;

/// Parity bits (MSB first) of `bits` with zero initial state.
Bits crc_parity(std::span<const std::uint8_t> bits, CrcKind kind);

Bits attach_crc(std::span<const std::uint8_t> payload, CrcKind kind);

/// True when the trailing crc_length(kind) bits match the payload in front of them.
bool check_crc(std::span<const std::uint8_t> bits_with_crc, CrcKind kind);

} // namespace nrpusch::transport
