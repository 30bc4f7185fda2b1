// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/waveform/filter.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nrpusch::waveform {

namespace {

// Integral of cos(2*pi*f*m/fs) over [f1, f2].
double cos_integral(int m, double f1, double f2, double fs)
{
    if (m == 0)
        return f2 - f1;
    const double w = 2.0 * kPi * m / fs;
    return (std::sin(w * f2) - std::sin(w * f1)) / w;
}

} // namespace

FilterSpec tx_filter_spec(const Numerology& num, int n_prb, double bandwidth_hz, int n_taps)
{
    FilterSpec s;
    s.sample_rate = num.sample_rate();
    s.f_pass = 0.5 * num.delta_f() * n_prb * kSubcarriersPerPrb;
    s.f_stop = 0.5 * bandwidth_hz;
    s.n_taps = n_taps;
    return s;
}

Eigen::VectorXd design_tx_filter(const FilterSpec& spec)
{
    if (spec.n_taps < 3 || spec.n_taps % 2 == 0)
        throw Error("design_tx_filter: tap count must be odd and >= 3");
    if (!(spec.f_pass > 0.0 && spec.f_pass < spec.f_stop && spec.f_stop <= spec.sample_rate / 2))
        throw Error(fmt::format("design_tx_filter: infeasible band edges ({} / {} Hz at {} Hz)",
                                spec.f_pass, spec.f_stop, spec.sample_rate));
    const int m = (spec.n_taps - 1) / 2;
    const double fs = spec.sample_rate;
    const double nyq = fs / 2;

    // A(f) = sum_k a_k cos(2 pi f k / fs); minimise the squared error over both bands.
    Eigen::MatrixXd q(m + 1, m + 1);
    Eigen::VectorXd b(m + 1);
    for (int k = 0; k <= m; ++k) {
        b[k] = cos_integral(k, 0.0, spec.f_pass, fs);
        for (int l = 0; l <= m; ++l) {
            auto band = [&](double f1, double f2) {
                return 0.5 * (cos_integral(k - l, f1, f2, fs) + cos_integral(k + l, f1, f2, fs));
            };
            q(k, l) = band(0.0, spec.f_pass) + band(spec.f_stop, nyq);
        }
    }
    const Eigen::VectorXd a = q.ldlt().solve(b);

    Eigen::VectorXd h(spec.n_taps);
    h[m] = a[0];
    for (int k = 1; k <= m; ++k)
        h[m + k] = h[m - k] = 0.5 * a[k];
    return h;
}

Eigen::VectorXd design_tx_filter(const Numerology& num, int n_prb, double bandwidth_hz, int n_taps)
{
    return design_tx_filter(tx_filter_spec(num, n_prb, bandwidth_hz, n_taps));
}

Eigen::VectorXd magnitude_response(const Eigen::VectorXd& h, const Eigen::VectorXd& freqs_hz,
                                   double sample_rate)
{
    Eigen::VectorXd out(freqs_hz.size());
    for (Eigen::Index i = 0; i < freqs_hz.size(); ++i) {
        cf64 acc{};
        const double w = 2.0 * kPi * freqs_hz[i] / sample_rate;
        for (Eigen::Index k = 0; k < h.size(); ++k)
            acc += h[k] * std::polar(1.0, -w * static_cast<double>(k));
        out[i] = std::abs(acc);
    }
    return out;
}

TimeSignal apply_filter(const TimeSignal& sig, const Eigen::VectorXd& h)
{
    TimeSignal out;
    out.sample_rate = sig.sample_rate;
    out.group_delay = sig.group_delay + static_cast<int>((h.size() - 1) / 2);
    const Eigen::Index len = sig.length();
    out.samples = SampleMatrix::Zero(sig.n_antennas(), len + h.size() - 1);
    for (Eigen::Index k = 0; k < h.size(); ++k)
        out.samples.middleCols(k, len) += h[k] * sig.samples;
    return out;
}

} // namespace nrpusch::waveform
