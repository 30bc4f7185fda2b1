// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/receiver/demapper.hpp"

#include <array>
#include <limits>

#include <fmt/format.h>

#include "nrpusch/waveform/gold.hpp"

namespace nrpusch::receiver {

namespace {

struct AxisTable {
    int bits = 0;
    int levels = 0;
    std::array<double, 8> amp{};
    std::array<std::array<std::uint8_t, 3>, 8> label{};
};

AxisTable axis_table(Modulation m)
{
    AxisTable t;
    t.bits = waveform::bits_per_symbol(m) / 2;
    t.levels = 1 << t.bits;
    const double scale = waveform::constellation_scale(m);
    for (int v = 0; v < t.levels; ++v) {
        std::array<std::uint8_t, 3> b{};
        for (int i = 0; i < t.bits; ++i)
            b[i] = (v >> (t.bits - 1 - i)) & 1;
        t.label[v] = b;
        t.amp[v] = scale * waveform::pam_level({b.data(), static_cast<std::size_t>(t.bits)});
    }
    return t;
}

} // namespace

std::vector<double> demap_llr(const Eigen::VectorXcd& symbols, const Eigen::VectorXd& noise_var, Modulation m)
{
    if (noise_var.size() != symbols.size())
        throw Error("demap_llr: noise variance count mismatch");
    const AxisTable tab = axis_table(m);
    const int qm = waveform::bits_per_symbol(m);
    std::vector<double> llr(static_cast<std::size_t>(symbols.size()) * qm);
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (Eigen::Index s = 0; s < symbols.size(); ++s) {
        const double var = noise_var[s];
        if (!(var > 0.0))
            throw Error("demap_llr: noise variance must be positive");
        const double axis[2] = {symbols[s].real(), symbols[s].imag()};
        for (int a = 0; a < 2; ++a) {
            std::array<double, 3> d0{inf, inf, inf};
            std::array<double, 3> d1{inf, inf, inf};
            for (int v = 0; v < tab.levels; ++v) {
                const double d = (axis[a] - tab.amp[v]) * (axis[a] - tab.amp[v]);
                for (int i = 0; i < tab.bits; ++i) {
                    auto& slot = tab.label[v][i] ? d1[i] : d0[i];
                    slot = std::min(slot, d);
                }
            }
            // axis a carries bits a, a + 2, a + 4 of the symbol label
            for (int i = 0; i < tab.bits; ++i)
                llr[s * qm + 2 * i + a] = saturate_llr(-(d0[i] - d1[i]) / var);
        }
    }
    return llr;
}

std::vector<double> demap_llr(const Eigen::VectorXcd& symbols, double noise_var, Modulation m)
{
    return demap_llr(symbols, Eigen::VectorXd::Constant(symbols.size(), noise_var), m);
}

void descramble_llr(std::vector<double>& llr, std::uint32_t seed)
{
    const Bits c = waveform::gold_sequence(seed, llr.size());
    for (std::size_t i = 0; i < llr.size(); ++i)
        if (c[i])
            llr[i] = -llr[i];
}

} // namespace nrpusch::receiver
