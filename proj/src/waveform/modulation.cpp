// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/waveform/modulation.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nrpusch::waveform {

int bits_per_symbol(Modulation m) noexcept
{
    switch (m) {
    case Modulation::qpsk:
        return 2;
    case Modulation::qam16:
        return 4;
    case Modulation::qam64:
        return 6;
    }
    return 0;
}

Modulation modulation_from_order(int qm)
{
    switch (qm) {
    case 2:
        return Modulation::qpsk;
    case 4:
        return Modulation::qam16;
    case 6:
        return Modulation::qam64;
    default:
        throw Error(fmt::format("unsupported modulation order {}", qm));
    }
}

std::string_view modulation_name(Modulation m) noexcept
{
    switch (m) {
    case Modulation::qpsk:
        return "QPSK";
    case Modulation::qam16:
        return "16QAM";
    case Modulation::qam64:
        return "64QAM";
    }
    return "?";
}

int pam_level(std::span<const std::uint8_t> b) noexcept
{
    // (1-2b0) * (2^(k-1) - (1-2b1) * (2^(k-2) - ...)), nested from the innermost bit.
    int v = 1;
    for (std::size_t i = b.size(); i-- > 1;)
        v = (1 << (b.size() - i)) - (1 - 2 * b[i]) * v;
    return (1 - 2 * b[0]) * v;
}

double constellation_scale(Modulation m) noexcept
{
    switch (m) {
    case Modulation::qpsk:
        return 1.0 / std::sqrt(2.0);
    case Modulation::qam16:
        return 1.0 / std::sqrt(10.0);
    case Modulation::qam64:
        return 1.0 / std::sqrt(42.0);
    }
    return 0.0;
}

Eigen::VectorXcd map_symbols(std::span<const std::uint8_t> bits, Modulation m)
{
    const int qm = bits_per_symbol(m);
    if (bits.size() % qm != 0)
        throw Error(fmt::format("map_symbols: {} bits is not a multiple of {}", bits.size(), qm));
    const int half = qm / 2;
    const double scale = constellation_scale(m);
    const Eigen::Index n = static_cast<Eigen::Index>(bits.size() / qm);
    Eigen::VectorXcd out(n);
    std::uint8_t ib[3];
    std::uint8_t qb[3];
    for (Eigen::Index s = 0; s < n; ++s) {
        const std::uint8_t* b = bits.data() + s * qm;
        for (int i = 0; i < half; ++i) {
            ib[i] = b[2 * i];
            qb[i] = b[2 * i + 1];
        }
        out[s] = scale * cf64(pam_level({ib, static_cast<std::size_t>(half)}),
                              pam_level({qb, static_cast<std::size_t>(half)}));
    }
    return out;
}

Eigen::VectorXcd constellation(Modulation m)
{
    const int qm = bits_per_symbol(m);
    Bits labels(static_cast<std::size_t>(qm) << qm);
    for (int v = 0; v < (1 << qm); ++v)
        for (int i = 0; i < qm; ++i)
            labels[v * qm + i] = (v >> (qm - 1 - i)) & 1;
    return map_symbols(labels, m);
}

} // namespace nrpusch::waveform
