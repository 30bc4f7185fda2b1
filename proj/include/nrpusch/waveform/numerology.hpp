// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "nrpusch/common.hpp"

namespace nrpusch::waveform {

inline constexpr int kSymbolsPerSlot = 14;
inline constexpr int kSubcarriersPerPrb = 12;

/// OFDM numerology: subcarrier spacing 15*2^mu kHz sampled with an n_fft-point transform.
struct Numerology {
    int mu = 1;
    int n_fft = 2048;

    double delta_f() const noexcept { return 15e3 * (1 << mu); }
    double sample_rate() const noexcept { return delta_f() * n_fft; }
    int slots_per_subframe() const noexcept { return 1 << mu; }
    double slot_duration() const noexcept { return 1e-3 / slots_per_subframe(); }

    int cp_short() const noexcept { return 144 * n_fft / 2048; }
    /// Extra 16*kappa*Tc on the first symbol of every half subframe.
    int cp_long() const noexcept { return cp_short() + (n_fft << mu) / 128; }

    /// CP length of symbol l (0..13) of slot `slot` (slot index within the frame).
    int cp_length(int slot, int l) const noexcept
    {
        const int in_subframe = (slot % slots_per_subframe()) * kSymbolsPerSlot + l;
        return in_subframe % (7 << mu) == 0 ? cp_long() : cp_short();
    }
    /// Sample index where symbol l's CP starts.
    int symbol_start(int slot, int l) const noexcept
    {
        int s = 0;
        for (int i = 0; i < l; ++i)
            s += cp_length(slot, i) + n_fft;
        return s;
    }
    int slot_samples(int slot) const noexcept { return symbol_start(slot, kSymbolsPerSlot); }

    void validate() const;
};

enum class ReKind : std::uint8_t { data, dmrs, empty };

/// Single-UE PUSCH allocation. Symbols 0..n_symbols-1 of the slot are allocated.
struct PuschConfig {
    int n_prb = 106;
    int first_prb = 0;
    int n_layers = 2;
    int mcs_index = 0;
    int n_symbols = kSymbolsPerSlot;
    std::vector<int> dmrs_symbols = {2, 11};
    int dmrs_spacing = 2;
    std::uint32_t scrambling_seed = 1;  ///< data scrambling c_init and DMRS identity
    int slot_number = 0;

    int n_subcarriers() const noexcept { return kSubcarriersPerPrb * n_prb; }
    bool is_dmrs_symbol(int l) const noexcept;
    std::vector<int> data_symbols() const;
    int data_res_per_layer() const noexcept
    {
        return static_cast<int>(data_symbols().size()) * n_subcarriers();
    }
    /// Kind of RE (l, k) as seen from `port`.
    ReKind re_kind(int port, int l, int k) const noexcept;

    void validate(const Numerology& num) const;
};

} // namespace nrpusch::waveform
