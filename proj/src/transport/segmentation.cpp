// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/transport/segmentation.hpp"

#include <fmt/format.h>

namespace nrpusch::transport {

TransportBlock::TransportBlock(Bits payload)
    : tbs_(payload.size()), crc_(crc_for(payload.size())), bits_(attach_crc(payload, crc_))
{
}

ldpc::BaseGraphId select_base_graph(std::size_t tbs, double rate) noexcept
{
    if (tbs <= 292 || (tbs <= 3824 && rate <= 0.67) || rate <= 0.25)
        return ldpc::BaseGraphId::bg2;
    return ldpc::BaseGraphId::bg1;
}

CodeBlockSet segment(const TransportBlock& tb, double target_rate)
{
    using ldpc::BaseGraphId;
    CodeBlockSet out;
    out.base_graph = select_base_graph(tb.tbs(), target_rate);
    const bool bg1 = out.base_graph == BaseGraphId::bg1;
    const int b = static_cast<int>(tb.bits().size());
    const int k_cb = bg1 ? 8448 : 3840;

    int b_prime = b;
    if (b <= k_cb) {
        out.count = 1;
        out.block_crc = 0;
    } else {
        out.block_crc = 24;
        out.count = (b + (k_cb - out.block_crc) - 1) / (k_cb - out.block_crc);
        b_prime = b + out.count * out.block_crc;
    }
    if (out.count > 1024)
        throw Error("segment: transport block exceeds the supported size");
    if (b_prime % out.count != 0)
        throw Error(fmt::format("segment: {} bits do not split into {} equal blocks", b_prime,
                                out.count));
    out.k_prime = b_prime / out.count;

    int kb = 22;
    if (!bg1)
        kb = b > 640 ? 10 : b > 560 ? 9 : b > 192 ? 8 : 6;
    out.lifting = 0;
    for (int z : ldpc::lifting_sizes())
        if (kb * z >= out.k_prime) {
            out.lifting = z;
            break;
        }
    if (out.lifting == 0)
        throw Error("segment: no lifting size fits the code block");
    out.k = (bg1 ? 22 : 10) * out.lifting;
    out.filler = out.k - out.k_prime;

    const int payload_per_block = out.k_prime - out.block_crc;
    const auto& bits = tb.bits();
    for (int r = 0; r < out.count; ++r) {
        Bits block(bits.begin() + r * payload_per_block, bits.begin() + (r + 1) * payload_per_block);
        if (out.block_crc)
            block = attach_crc(block, CrcKind::crc24b);
        std::vector<std::uint8_t> mask(out.k, 0);
        block.resize(out.k, 0);
        std::fill(mask.begin() + out.k_prime, mask.end(), 1);
        out.blocks.emplace_back(std::move(block), std::move(mask));
    }
    return out;
}

Desegmented desegment(std::span<const Bits> decoded, const CodeBlockSet& layout)
{
    if (static_cast<int>(decoded.size()) != layout.count)
        throw Error("desegment: block count mismatch");
    Desegmented out;
    const int payload_per_block = layout.k_prime - layout.block_crc;
    for (const auto& block : decoded) {
        if (static_cast<int>(block.size()) < layout.k_prime)
            throw Error("desegment: block too short");
        const auto with_crc = std::span<const std::uint8_t>(block).first(layout.k_prime);
        out.block_ok.push_back(layout.block_crc ? check_crc(with_crc, CrcKind::crc24b) : 1);
        out.transport_bits.insert(out.transport_bits.end(), block.begin(),
                                  block.begin() + payload_per_block);
    }
    return out;
}

} // namespace nrpusch::transport
