// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/channel/impairments.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nrpusch::channel {

using waveform::SampleMatrix;

double signal_power(const TimeSignal& sig, int antenna)
{
    Eigen::Index begin = sig.group_delay;
    Eigen::Index len = sig.length() - 2 * sig.group_delay;
    if (len <= 0) {
        begin = 0;
        len = sig.length();
    }
    if (len == 0)
        return 0.0;
    return sig.samples.row(antenna).segment(begin, len).squaredNorm() / static_cast<double>(len);
}

double noise_variance(double signal_power, double snr_db, double bandwidth_fraction)
{
    if (!(bandwidth_fraction > 0.0 && bandwidth_fraction <= 1.0))
        throw Error("noise_variance: bandwidth fraction must be in (0, 1]");
    if (std::isinf(snr_db) && snr_db > 0)
        return 0.0;
    if (!std::isfinite(snr_db))
        throw Error("noise_variance: SNR must be finite or +inf");
    return signal_power / (std::pow(10.0, snr_db / 10.0) * bandwidth_fraction);
}

namespace {

void add_noise(SampleMatrix& x, int row, double variance, std::mt19937_64& rng)
{
    if (variance <= 0.0)
        return;
    std::normal_distribution<double> g(0.0, std::sqrt(variance / 2.0));
    for (Eigen::Index i = 0; i < x.cols(); ++i)
        x(row, i) += cf64(g(rng), g(rng));
}

} // namespace

TimeSignal awgn(const TimeSignal& sig, double snr_db, std::mt19937_64& rng, const AwgnOptions& opts)
{
    TimeSignal out = sig;
    if (std::isinf(snr_db) && snr_db > 0)
        return out;
    for (int a = 0; a < sig.n_antennas(); ++a) {
        const double p = opts.reference_power >= 0 ? opts.reference_power : signal_power(sig, a);
        if (!(p > 0.0))
            throw Error("awgn: signal has zero power");
        add_noise(out.samples, a, noise_variance(p, snr_db, opts.bandwidth_fraction), rng);
    }
    return out;
}

TimeSignal apply_channel(const TimeSignal& sig, const ChannelRealization& real, const ImpairmentSpec& imp,
                         std::mt19937_64& rng)
{
    if (real.n_tx() != sig.n_antennas())
        throw Error(fmt::format("apply_channel: realization has {} tx antennas, signal has {}",
                                real.n_tx(), sig.n_antennas()));
    const Eigen::Index len = sig.length();
    const int max_d = real.max_delay();
    if (real.n_samples() < len + max_d)
        throw Error("apply_channel: realization shorter than the signal");

    double p_ref = 0.0;
    for (int t = 0; t < sig.n_antennas(); ++t)
        p_ref += signal_power(sig, t);
    p_ref /= sig.n_antennas();

    TimeSignal out;
    out.sample_rate = sig.sample_rate;
    out.group_delay = sig.group_delay;
    const Eigen::Index out_len = len + max_d;
    out.samples = SampleMatrix::Zero(real.n_rx(), out_len);
    const auto& delays = real.delays();
    for (int r = 0; r < real.n_rx(); ++r)
        for (int t = 0; t < real.n_tx(); ++t)
            for (int p = 0; p < real.n_taps(); ++p) {
                const int d = delays[p];
                if (real.doppler() == 0.0) {
                    const cf64 g = real.gain(r, t, p, 0.0);
                    if (g != cf64{})
                        out.samples.row(r).segment(d, len) += g * sig.samples.row(t);
                    continue;
                }
                for (Eigen::Index n = 0; n < len; ++n)
                    out.samples(r, n + d) += real.gain(r, t, p, static_cast<double>(n + d)) * sig.samples(t, n);
            }

    if (imp.cfo_hz != 0.0) {
        const double w = 2.0 * kPi * imp.cfo_hz / sig.sample_rate;
        for (Eigen::Index n = 0; n < out_len; ++n)
            out.samples.col(n) *= std::polar(1.0, w * static_cast<double>(n));
    }
    if (imp.sto_samples != 0) {
        SampleMatrix shifted = SampleMatrix::Zero(out.samples.rows(), out_len);
        const int s = imp.sto_samples;
        if (s > 0)
            shifted.rightCols(out_len - s) = out.samples.leftCols(out_len - s);
        else
            shifted.leftCols(out_len + s) = out.samples.rightCols(out_len + s);
        out.samples = std::move(shifted);
    }
    if (!(std::isinf(imp.snr_db) && imp.snr_db > 0)) {
        if (!(p_ref > 0.0))
            throw Error("apply_channel: input signal has zero power");
        const double var = noise_variance(p_ref, imp.snr_db, imp.bandwidth_fraction);
        for (int r = 0; r < out.n_antennas(); ++r)
            add_noise(out.samples, r, var, rng);
    }
    return out;
}

} // namespace nrpusch::channel
