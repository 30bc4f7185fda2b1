// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/receiver/sync.hpp"

#include <cmath>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "nrpusch/waveform/ofdm.hpp"

namespace nrpusch::receiver {

namespace {

int resolve_advance(const Numerology& num, int window_advance)
{
    return window_advance < 0 ? num.cp_short() / 2 : window_advance;
}

// Sample index (slot-relative) where the FFT window of symbol l starts.
double window_start(const Numerology& num, const PuschConfig& cfg, int l, int advance)
{
    return num.symbol_start(cfg.slot_number, l) + num.cp_length(cfg.slot_number, l) - advance;
}

// D(x) = (1/N) sum_{n<N} e^{j 2 pi x n / N}
cf64 dirichlet(double x, int n)
{
    if (std::abs(x) < 1e-12)
        return 1.0;
    const double den = n * std::sin(kPi * x / n);
    return std::polar(std::sin(kPi * x) / den, kPi * x * (n - 1) / n);
}

} // namespace

SyncEstimate estimate_sync(const ResourceGrid& rx, const PuschConfig& cfg, const Numerology& num,
                           int window_advance)
{
    const int advance = resolve_advance(num, window_advance);
    const auto ls = estimate_ls(rx, cfg);
    SyncEstimate est;

    if (ls.symbols.size() < 2) {
        est.cfo_estimable = false;
    } else {
        cf64 acc{};
        for (const auto& h : ls.values)
            acc += (h.row(1).array() * h.row(0).conjugate().array()).sum();
        const double dt = (window_start(num, cfg, ls.symbols[1], advance) -
                           window_start(num, cfg, ls.symbols[0], advance)) /
                          num.sample_rate();
        est.cfo_hz = std::arg(acc) / (2.0 * kPi * dt);
    }

    // Pilot index i sits at subcarrier offset + spacing * i, so a size n_fft / spacing IDFT maps
    // delay d (samples) to bin d.
    const int m = num.n_fft / cfg.dmrs_spacing;
    std::vector<double> power(m, 0.0);
    std::vector<cf64> in(m), out(m);
    Eigen::FFT<double> fft;
    for (const auto& h : ls.values)
        for (Eigen::Index j = 0; j < h.rows(); ++j) {
            std::fill(in.begin(), in.end(), cf64{});
            for (Eigen::Index i = 0; i < h.cols() && i < m; ++i)
                in[i] = h(j, i);
            fft.inv(out, in);
            for (int i = 0; i < m; ++i)
                power[i] += std::norm(out[i]);
        }
    int peak = 0;
    for (int i = 1; i < m; ++i)
        if (power[i] > power[peak])
            peak = i;
    const double pm = power[(peak + m - 1) % m];
    const double p0 = power[peak];
    const double pp = power[(peak + 1) % m];
    const double den = pm - 2.0 * p0 + pp;
    const double frac = den < 0.0 ? 0.5 * (pm - pp) / den : 0.0;
    double sto = peak + frac;
    if (sto >= m / 2.0)
        sto -= m;
    est.sto_samples = sto;
    return est;
}

ResourceGrid correct_sync(const ResourceGrid& rx, const SyncEstimate& est, const PuschConfig& cfg,
                          const Numerology& num, int window_advance)
{
    const int advance = resolve_advance(num, window_advance);
    const int n = num.n_fft;
    const int n_sc = rx.n_subcarriers();
    ResourceGrid out = rx;

    if (est.cfo_hz != 0.0) {
        const double eps = est.cfo_hz / num.delta_f();
        const int half = kCfoKernelTaps / 2;
        // Output k = sum_q Y[k + q] * D(q - eps) * e^{-j 2 pi q advance / n}; the window-advance
        // factor keeps the kernel consistent with the phase ramp already applied at demodulation.
        std::vector<cf64> kernel(kCfoKernelTaps);
        for (int q = -half; q <= half; ++q)
            kernel[q + half] = dirichlet(q - eps, n) * std::polar(1.0, -2.0 * kPi * q * advance / n);
        Eigen::RowVectorXcd row(n_sc);
        for (int p = 0; p < rx.n_planes(); ++p)
            for (int l = 0; l < rx.n_symbols(); ++l) {
                const cf64 common = std::polar(1.0, -2.0 * kPi * eps * window_start(num, cfg, l, advance) / n);
                for (int k = 0; k < n_sc; ++k) {
                    cf64 acc{};
                    for (int q = -half; q <= half; ++q) {
                        const int kk = k + q;
                        if (kk >= 0 && kk < n_sc)
                            acc += rx.planes[p](l, kk) * kernel[q + half];
                    }
                    row[k] = acc * common;
                }
                out.planes[p].row(l) = row;
            }
    }
    if (est.sto_samples != 0.0) {
        Eigen::RowVectorXcd ramp(n_sc);
        for (int k = 0; k < n_sc; ++k)
            ramp[k] = std::polar(1.0, 2.0 * kPi * waveform::fft_bin(cfg, k) * est.sto_samples / n);
        for (auto& plane : out.planes)
            for (int l = 0; l < plane.rows(); ++l)
                plane.row(l).array() *= ramp.array();
    }
    return out;
}

} // namespace nrpusch::receiver
