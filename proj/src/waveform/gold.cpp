// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/waveform/gold.hpp"

namespace nrpusch::waveform {

namespace {

constexpr int kNc = 1600;

// One LFSR step on a 31-bit state held LSB = x(n).
inline std::uint32_t step_x1(std::uint32_t s) noexcept
{
    const std::uint32_t fb = ((s >> 3) ^ s) & 1U;
    return (s >> 1) | (fb << 30);
}

inline std::uint32_t step_x2(std::uint32_t s) noexcept
{
    const std::uint32_t fb = ((s >> 3) ^ (s >> 2) ^ (s >> 1) ^ s) & 1U;
    return (s >> 1) | (fb << 30);
}

} // namespace

Bits gold_sequence(std::uint32_t c_init, std::size_t length)
{
    std::uint32_t x1 = 1;
    std::uint32_t x2 = c_init & 0x7FFFFFFFU;
    for (int i = 0; i < kNc; ++i) {
        x1 = step_x1(x1);
        x2 = step_x2(x2);
    }
    Bits c(length);
    for (std::size_t n = 0; n < length; ++n) {
        c[n] = static_cast<std::uint8_t>((x1 ^ x2) & 1U);
        x1 = step_x1(x1);
        x2 = step_x2(x2);
    }
    return c;
}

Bits scramble(const Bits& bits, std::uint32_t seed)
{
    Bits out = gold_sequence(seed, bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        out[i] ^= bits[i];
    return out;
}

BitBlock scramble(const BitBlock& bits, std::uint32_t seed)
{
    return BitBlock(scramble(bits.bits, seed), bits.filler);
}

std::uint32_t dmrs_c_init(int slot, int symbol, std::uint32_t n_id) noexcept
{
    const std::uint64_t id = n_id & 0xFFFFU;
    const std::uint64_t v =
        (std::uint64_t{1} << 17) * static_cast<std::uint64_t>(14 * slot + symbol + 1) * (2 * id + 1) +
        2 * id;
    return static_cast<std::uint32_t>(v % (std::uint64_t{1} << 31));
}

} // namespace nrpusch::waveform
