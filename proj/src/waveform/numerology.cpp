// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/waveform/numerology.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace nrpusch::waveform {

void Numerology::validate() const
{
    if (mu < 0 || mu > 6)
        throw Error("numerology: mu out of range");
    if (n_fft < 128 || (n_fft & (n_fft - 1)) != 0)
        throw Error("numerology: FFT size must be a power of two >= 128");
}

bool PuschConfig::is_dmrs_symbol(int l) const noexcept
{
    return std::find(dmrs_symbols.begin(), dmrs_symbols.end(), l) != dmrs_symbols.end();
}

std::vector<int> PuschConfig::data_symbols() const
{
    std::vector<int> out;
    for (int l = 0; l < n_symbols; ++l)
        if (!is_dmrs_symbol(l))
            out.push_back(l);
    return out;
}

ReKind PuschConfig::re_kind(int port, int l, int k) const noexcept
{
    if (!is_dmrs_symbol(l))
        return ReKind::data;
    return k % dmrs_spacing == port ? ReKind::dmrs : ReKind::empty;
}

void PuschConfig::validate(const Numerology& num) const
{
    if (n_prb < 1 || first_prb < 0)
        throw Error("pusch config: invalid PRB allocation");
    if (kSubcarriersPerPrb * (first_prb + n_prb) > num.n_fft)
        throw Error(fmt::format("pusch config: {} PRB do not fit a {}-point FFT", first_prb + n_prb,
                                num.n_fft));
    if (n_layers < 1 || n_layers > 2)
        throw Error("pusch config: n_layers must be 1 or 2");
    if (n_symbols < 1 || n_symbols > kSymbolsPerSlot)
        throw Error("pusch config: n_symbols must be in 1..14");
    if (dmrs_spacing != 2 && dmrs_spacing != 3)
        throw Error("pusch config: DMRS spacing must be 2 or 3");
    if (n_layers > dmrs_spacing)
        throw Error("pusch config: more layers than DMRS combs");
    if (dmrs_symbols.empty())
        throw Error("pusch config: at least one DMRS symbol is required");
    auto sorted = dmrs_symbols;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("pusch config: duplicate DMRS symbol");
    for (int l : dmrs_symbols)
        if (l < 0 || l >= n_symbols)
            throw Error(fmt::format("pusch config: DMRS symbol {} outside the allocation", l));
    if (data_symbols().empty())
        throw Error("pusch config: no data symbols left");
    if (slot_number < 0)
        throw Error("pusch config: negative slot number");
}

} // namespace nrpusch::waveform
