// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "nrpusch/channel/tdl.hpp"

namespace nrpusch::channel {

inline constexpr int kSosOscillators = 128;

/// One unit-variance Rayleigh process (Zheng-Xiao sum of sinusoids) with its random draw.
class SosProcess {
public:
    SosProcess() = default;
    SosProcess(double doppler_hz, std::uint64_t seed, int n_osc = kSosOscillators);

    cf64 operator()(double t) const;
    double doppler() const noexcept { return fd_; }

private:
    double fd_ = 0.0;
    double t0_ = 0.0;
    double phi_ = 0.0;
    std::vector<double> cos_alpha_;
    std::vector<cf64> weight_;  ///< sqrt(2/N) * e^{j psi_n}
};

/// Time-varying tapped delay line for every (rx, tx) pair. Gains are held on a coarse grid
/// fine enough for the Doppler (phase step <= 0.01 rad) and interpolated linearly per sample.
class ChannelRealization {
public:
    ChannelRealization() = default;

    int n_rx() const noexcept { return n_rx_; }
    int n_tx() const noexcept { return n_tx_; }
    int n_taps() const noexcept { return static_cast<int>(delays_.size()); }
    const std::vector<int>& delays() const noexcept { return delays_; }
    Eigen::Index n_samples() const noexcept { return n_samples_; }
    double sample_rate() const noexcept { return sample_rate_; }
    double doppler() const noexcept { return doppler_; }
    int max_delay() const noexcept;

    /// Gain of one tap including the tap amplitude and the 1/sqrt(n_tx) spatial normalisation.
    cf64 gain(int rx, int tx, int tap, double sample) const;

    /// Frequency response sum_tap g * e^{-j 2 pi bin d / n_fft} at `sample`.
    cf64 response(int rx, int tx, double sample, int bin, int n_fft) const;

    /// Fixed spatial matrix on a single zero-delay tap (no normalisation applied).
    static ChannelRealization flat(const Eigen::MatrixXcd& h, Eigen::Index n_samples, double sample_rate);

    friend ChannelRealization generate_fading(const TdlProfile&, double, Eigen::Index, int, int,
                                              double, std::uint64_t);

private:
    int n_rx_ = 0;
    int n_tx_ = 0;
    Eigen::Index n_samples_ = 0;
    double sample_rate_ = 0.0;
    double doppler_ = 0.0;
    std::vector<int> delays_;
    double step_ = 1.0;        ///< samples between grid points
    Eigen::MatrixXcd grid_;    ///< row (rx * n_tx + tx) * n_taps + tap, column = grid point
};

/// Independent SoS process per (rx, tx, tap), each scaled by sqrt(tap power / n_tx).
ChannelRealization generate_fading(const TdlProfile& profile, double doppler_hz, Eigen::Index n_samples,
                                   int n_rx, int n_tx, double sample_rate, std::uint64_t seed);

} // namespace nrpusch::channel
