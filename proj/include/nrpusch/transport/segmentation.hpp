// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "nrpusch/common.hpp"
#include "nrpusch/ldpc/base_graph.hpp"
#include "nrpusch/transport/crc.hpp"

namespace nrpusch::transport {

/// Transport block payload with its transport-level CRC attached.
class TransportBlock {
public:
    /// CRC16 for payloads up to 3824 bits, CRC24A above.
    static CrcKind crc_for(std::size_t tbs) noexcept
    {
        return tbs <= 3824 ? CrcKind::crc16 : CrcKind::crc24a;
    }

    explicit TransportBlock(Bits payload);

    std::size_t tbs() const noexcept { return tbs_; }
    CrcKind crc_kind() const noexcept { return crc_; }
    const Bits& bits() const noexcept { return bits_; }
    std::span<const std::uint8_t> payload() const noexcept
    {
        return std::span<const std::uint8_t>(bits_).first(tbs_);
    }

private:
    std::size_t tbs_;
    CrcKind crc_;
    Bits bits_;
};

/// BG2 iff TBS <= 292, or (TBS <= 3824 and R <= 0.67), or R <= 0.25.
ldpc::BaseGraphId select_base_graph(std::size_t tbs, double rate) noexcept;

struct CodeBlockSet {
    ldpc::BaseGraphId base_graph;
    int count = 0;        ///< C
    int block_crc = 0;    ///< per-block CRC length (0 or 24)
    int k_prime = 0;      ///< K': payload + per-block CRC bits per block
    int k = 0;            ///< lifted info length (22 or 10 times Z)
    int lifting = 0;      ///< Z_c
    int filler = 0;       ///< K - K'
    std::vector<BitBlock> blocks;
};

/// Splits a transport block (CRC attached) into C equal, filler-padded code blocks.
CodeBlockSet segment(const TransportBlock& tb, double target_rate);

struct Desegmented {
    Bits transport_bits;              ///< payload + transport CRC
    std::vector<std::uint8_t> block_ok;  ///< per-block CRC24B pass (all 1 when C = 1)
};

/// Inverse of segment(): strips fillers and per-block CRCs from decoded K-bit blocks.
Desegmented desegment(std::span<const Bits> decoded, const CodeBlockSet& layout);

} // namespace nrpusch::transport
