// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/waveform/ofdm.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>
#include <unsupported/Eigen/FFT>

namespace nrpusch::waveform {

namespace {

// kissfft keeps a twiddle cache; one instance per thread.
Eigen::FFT<double>& local_fft()
{
    thread_local Eigen::FFT<double> fft;
    return fft;
}

} // namespace

int fft_bin(const PuschConfig& cfg, int k) noexcept
{
    const int grid_sc = kSubcarriersPerPrb * (cfg.first_prb + cfg.n_prb);
    return kSubcarriersPerPrb * cfg.first_prb + k - grid_sc / 2;
}

TimeSignal ofdm_modulate(const ResourceGrid& grid, const PuschConfig& cfg, const Numerology& num)
{
    num.validate();
    cfg.validate(num);
    const int n = num.n_fft;
    const int n_sc = cfg.n_subcarriers();
    if (grid.n_subcarriers() != n_sc || grid.n_symbols() != kSymbolsPerSlot)
        throw Error("ofdm_modulate: grid dimensions do not match the configuration");

    TimeSignal sig;
    sig.sample_rate = num.sample_rate();
    sig.samples = SampleMatrix::Zero(grid.n_planes(), num.slot_samples(cfg.slot_number));
    const double scale = std::sqrt(static_cast<double>(n));
    std::vector<cf64> freq(n);
    std::vector<cf64> time(n);
    auto& fft = local_fft();
    for (int p = 0; p < grid.n_planes(); ++p) {
        for (int l = 0; l < kSymbolsPerSlot; ++l) {
            std::fill(freq.begin(), freq.end(), cf64{});
            for (int k = 0; k < n_sc; ++k)
                freq[(fft_bin(cfg, k) + n) % n] = grid.planes[p](l, k);
            fft.inv(time, freq);
            const int cp = num.cp_length(cfg.slot_number, l);
            const int start = num.symbol_start(cfg.slot_number, l);
            for (int i = 0; i < n; ++i)
                sig.samples(p, start + cp + i) = time[i] * scale;
            for (int i = 0; i < cp; ++i)
                sig.samples(p, start + i) = sig.samples(p, start + n + i);
        }
    }
    return sig;
}

ResourceGrid ofdm_demodulate(const TimeSignal& sig, const PuschConfig& cfg, const Numerology& num,
                             const DemodOptions& opts)
{
    num.validate();
    cfg.validate(num);
    const int n = num.n_fft;
    const int n_sc = cfg.n_subcarriers();
    const int advance = opts.window_advance < 0 ? num.cp_short() / 2 : opts.window_advance;
    if (advance > num.cp_short() || sig.group_delay + opts.timing_offset < 0)
        throw Error("ofdm_demodulate: window advance exceeds the cyclic prefix");
    const Eigen::Index need = sig.group_delay + opts.timing_offset + num.slot_samples(cfg.slot_number);
    if (sig.length() < need)
        throw Error(fmt::format("ofdm_demodulate: signal too short ({} < {})", sig.length(), need));

    ResourceGrid grid(sig.n_antennas(), kSymbolsPerSlot, n_sc);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::VectorXcd ramp(n_sc);
    for (int k = 0; k < n_sc; ++k)
        ramp[k] = std::polar(scale, 2.0 * kPi * fft_bin(cfg, k) * advance / n);
    std::vector<cf64> time(n);
    std::vector<cf64> freq(n);
    auto& fft = local_fft();
    for (int a = 0; a < sig.n_antennas(); ++a) {
        for (int l = 0; l < kSymbolsPerSlot; ++l) {
            const Eigen::Index start = sig.group_delay + opts.timing_offset + num.symbol_start(cfg.slot_number, l) +
                                       num.cp_length(cfg.slot_number, l) - advance;
            for (int i = 0; i < n; ++i)
                time[i] = sig.samples(a, start + i);
            fft.fwd(freq, time);
            for (int k = 0; k < n_sc; ++k)
                grid.planes[a](l, k) = freq[(fft_bin(cfg, k) + n) % n] * ramp[k];
        }
    }
    return grid;
}

} // namespace nrpusch::waveform
