// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/transport/crc.hpp"

#include <boost/crc.hpp>

namespace nrpusch::transport {
namespace {

template <std::size_t Width>
Bits run_crc(std::span<const std::uint8_t> bits, std::uint32_t poly)
{
    boost::crc_basic<Width> crc(poly, 0, 0, false, false);
    for (auto b : bits)
        crc.process_bit(b & 1U);
    const auto rem = crc.checksum();
    Bits out(Width);
    for (std::size_t i = 0; i < Width; ++i)
        out[i] = static_cast<std::uint8_t>((rem >> (Width - 1 - i)) & 1U);
    return out;
}

} // namespace

int crc_length(CrcKind kind) noexcept
{
    return kind == CrcKind::crc16 ? 16 : 24;
}

std::uint32_t crc_polynomial(CrcKind kind) noexcept
{
    switch (kind) {
    case CrcKind::crc24a:
        return 0x864CFB;
    case CrcKind::crc24b:
        return 0x800063;
    case CrcKind::crc16:
        return 0x1021;
    }
    return 0;
}

Bits crc_parity(std::span<const std::uint8_t> bits, CrcKind kind)
{
    if (kind == CrcKind::crc16)
        return run_crc<16>(bits, crc_polynomial(kind));
    return run_crc<24>(bits, crc_polynomial(kind));
}

Bits attach_crc(std::span<const std::uint8_t> payload, CrcKind kind)
{
    if (payload.empty())
        throw Error("attach_crc: empty payload");
    Bits out(payload.begin(), payload.end());
    const auto parity = crc_parity(payload, kind);
    out.insert(out.end(), parity.begin(), parity.end());
    return out;
}

bool check_crc(std::span<const std::uint8_t> bits_with_crc, CrcKind kind)
{
    const std::size_t l = crc_length(kind);
    if (bits_with_crc.size() <= l)
        return false;
    const auto payload = bits_with_crc.first(bits_with_crc.size() - l);
    const auto parity = crc_parity(payload, kind);
    return std::equal(parity.begin(), parity.end(), bits_with_crc.end() - l);
}

} // namespace nrpusch::transport
