// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/channel/fading.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "nrpusch/random.hpp"

namespace nrpusch::channel {

namespace {

// Start-time spread for the per-process offset; t = 0 is a degenerate point of the model.
constexpr double kMaxStartOffset = 1e3;

} // namespace

SosProcess::SosProcess(double doppler_hz, std::uint64_t seed, int n_osc) : fd_(doppler_hz)
{
    if (doppler_hz < 0)
        throw Error("fading: Doppler must be non-negative");
    if (n_osc < 1)
        throw Error("fading: oscillator count must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    const double theta = u(rng);
    phi_ = u(rng);
    t0_ = std::uniform_real_distribution<double>(0.0, kMaxStartOffset)(rng);
    const double amp = std::sqrt(2.0 / n_osc);
    cos_alpha_.resize(n_osc);
    weight_.resize(n_osc);
    for (int n = 1; n <= n_osc; ++n) {
        const double alpha = (2.0 * kPi * n - kPi + theta) / (4.0 * n_osc);
        cos_alpha_[n - 1] = std::cos(alpha);
        weight_[n - 1] = std::polar(amp, u(rng));
    }
}

cf64 SosProcess::operator()(double t) const
{
    const double wd = 2.0 * kPi * fd_ * (t + t0_);
    cf64 acc{};
    for (std::size_t n = 0; n < weight_.size(); ++n)
        acc += weight_[n] * std::cos(wd * cos_alpha_[n] + phi_);
    return acc;
}

int ChannelRealization::max_delay() const noexcept
{
    return delays_.empty() ? 0 : *std::max_element(delays_.begin(), delays_.end());
}

cf64 ChannelRealization::gain(int rx, int tx, int tap, double sample) const
{
    const Eigen::Index row = (static_cast<Eigen::Index>(rx) * n_tx_ + tx) * n_taps() + tap;
    if (grid_.cols() == 1)
        return grid_(row, 0);
    const double pos = std::clamp(sample / step_, 0.0, static_cast<double>(grid_.cols() - 1));
    const auto i = std::min(static_cast<Eigen::Index>(pos), grid_.cols() - 2);
    const double f = pos - static_cast<double>(i);
    return grid_(row, i) * (1.0 - f) + grid_(row, i + 1) * f;
}

cf64 ChannelRealization::response(int rx, int tx, double sample, int bin, int n_fft) const
{
    cf64 acc{};
    for (int p = 0; p < n_taps(); ++p)
        acc += gain(rx, tx, p, sample) * std::polar(1.0, -2.0 * kPi * bin * delays_[p] / n_fft);
    return acc;
}

ChannelRealization ChannelRealization::flat(const Eigen::MatrixXcd& h, Eigen::Index n_samples,
                                            double sample_rate)
{
    ChannelRealization r;
    r.n_rx_ = static_cast<int>(h.rows());
    r.n_tx_ = static_cast<int>(h.cols());
    r.n_samples_ = n_samples;
    r.sample_rate_ = sample_rate;
    r.delays_ = {0};
    r.grid_.resize(h.size(), 1);
    for (int a = 0; a < r.n_rx_; ++a)
        for (int b = 0; b < r.n_tx_; ++b)
            r.grid_(a * r.n_tx_ + b, 0) = h(a, b);
    return r;
}

ChannelRealization generate_fading(const TdlProfile& profile, double doppler_hz, Eigen::Index n_samples,
                                   int n_rx, int n_tx, double sample_rate, std::uint64_t seed)
{
    if (n_rx < 1 || n_tx < 1 || n_samples < 1)
        throw Error("fading: invalid dimensions");
    if (doppler_hz < 0)
        throw Error("fading: Doppler must be non-negative");
    ChannelRealization r;
    r.n_rx_ = n_rx;
    r.n_tx_ = n_tx;
    r.n_samples_ = n_samples;
    r.sample_rate_ = sample_rate;
    r.doppler_ = doppler_hz;
    r.delays_ = profile.delay_samples(sample_rate);

    // Largest oscillator phase advance per grid step is 2 pi fd step / fs.
    Eigen::Index points = 2;
    if (doppler_hz > 0) {
        r.step_ = std::max(1.0, std::floor(0.01 * sample_rate / (2.0 * kPi * doppler_hz)));
        points = static_cast<Eigen::Index>(std::ceil((n_samples - 1) / r.step_)) + 1;
        points = std::max<Eigen::Index>(points, 2);
    } else {
        r.step_ = static_cast<double>(std::max<Eigen::Index>(n_samples - 1, 1));
    }
    const int taps = r.n_taps();
    r.grid_.resize(static_cast<Eigen::Index>(n_rx) * n_tx * taps, points);
    for (int a = 0; a < n_rx; ++a)
        for (int b = 0; b < n_tx; ++b)
            for (int p = 0; p < taps; ++p) {
                const Eigen::Index row = (static_cast<Eigen::Index>(a) * n_tx + b) * taps + p;
                const SosProcess proc(doppler_hz, derive_seed(seed, {std::uint64_t(a), std::uint64_t(b), std::uint64_t(p)}));
                const double scale = std::sqrt(profile.taps[p].power / n_tx);
                for (Eigen::Index i = 0; i < points; ++i)
                    r.grid_(row, i) = scale * proc(static_cast<double>(i) * r.step_ / sample_rate);
            }
    return r;
}

} // namespace nrpusch::channel
