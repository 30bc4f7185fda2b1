// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/receiver/estimation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace nrpusch::receiver {

namespace {

double db_to_lin(double db)
{
    return std::pow(10.0, db / 10.0);
}

} // namespace

PilotEstimate estimate_ls(const ResourceGrid& rx, const PuschConfig& cfg)
{
    PilotEstimate est;
    est.n_rx = rx.n_planes();
    est.n_tx = cfg.n_layers;
    est.kind = EstimatorKind::ls;
    est.symbols = cfg.dmrs_symbols;
    std::vector<std::vector<waveform::DmrsPilots>> pilots;
    for (int t = 0; t < est.n_tx; ++t) {
        pilots.push_back(waveform::generate_dmrs(cfg, t));
        est.subcarriers.push_back(pilots[t].front().subcarriers);
    }
    for (int r = 0; r < est.n_rx; ++r)
        for (int t = 0; t < est.n_tx; ++t) {
            const auto& sc = est.subcarriers[t];
            Eigen::MatrixXcd h(est.symbols.size(), sc.size());
            for (std::size_t j = 0; j < est.symbols.size(); ++j) {
                const auto& p = pilots[t][j];
                for (std::size_t i = 0; i < sc.size(); ++i)
                    h(j, i) = std::conj(p.values[i]) * rx.planes[r](p.symbol, sc[i]);
            }
            est.values.push_back(std::move(h));
        }
    return est;
}

double SnrEstimate::rho_db() const
{
    return 10.0 * std::log10(rho);
}

SnrEstimate estimate_snr(const PilotEstimate& ls, int window)
{
    if (window < 2 || window % 2 == 0)
        throw Error("estimate_snr: window must be odd and >= 3");
    const int half = window / 2;
    SnrEstimate out;
    out.pair_rho.resize(ls.n_rx, ls.n_tx);
    out.pair_noise.resize(ls.n_rx, ls.n_tx);
    const double rho_min = db_to_lin(kRhoMinDb);
    const double rho_max = db_to_lin(kRhoMaxDb);
    double noise_sum = 0.0;
    for (int r = 0; r < ls.n_rx; ++r)
        for (int t = 0; t < ls.n_tx; ++t) {
            const auto& h = ls.at(r, t);
            if (h.cols() < window)
                throw Error("estimate_snr: fewer pilots than the smoothing window");
            double resid = 0.0;
            double smooth = 0.0;
            long count = 0;
            for (Eigen::Index j = 0; j < h.rows(); ++j)
                for (Eigen::Index i = half; i + half < h.cols(); ++i) {
                    const cf64 s = h.row(j).segment(i - half, window).mean();
                    resid += std::norm(s - h(j, i));
                    smooth += std::norm(s);
                    ++count;
                }
            const double noise = resid / count / (1.0 - 1.0 / window);
            const double power = std::max(smooth / count - noise / window, 0.0);
            out.pair_noise(r, t) = noise;
            out.pair_rho(r, t) = noise > 0 ? std::clamp(power / noise, rho_min, rho_max) : rho_max;
            noise_sum += noise;
        }
    out.noise_var = noise_sum / (ls.n_rx * ls.n_tx);
    if (out.noise_var <= 0.0) {
        out.rho = rho_max;
        out.saturated = true;
    } else {
        const double rho = 1.0 / out.noise_var;
        out.rho = std::clamp(rho, rho_min, rho_max);
        out.saturated = out.rho != rho;
    }
    out.noise_var = 1.0 / out.rho;
    return out;
}

Eigen::MatrixXcd uniform_pdp_covariance(int n_pilots, int spacing, int n_fft, int taps)
{
    if (taps < 1)
        throw Error("uniform_pdp_covariance: need at least one tap");
    Eigen::MatrixXcd r(n_pilots, n_pilots);
    for (int a = 0; a < n_pilots; ++a)
        for (int b = 0; b < n_pilots; ++b) {
            const double dk = static_cast<double>(spacing) * (a - b);
            cf64 acc{};
            for (int l = 0; l < taps; ++l)
                acc += std::polar(1.0, -2.0 * kPi * dk * l / n_fft);
            r(a, b) = acc / static_cast<double>(taps);
        }
    return r;
}

MmseFilter::MmseFilter(const Eigen::MatrixXcd& rhh, double beta) : beta_(beta)
{
    if (rhh.rows() != rhh.cols())
        throw Error("MmseFilter: Rhh must be square");
    const double scale = std::max(rhh.cwiseAbs().maxCoeff(), 1e-300);
    if ((rhh - rhh.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw Error("MmseFilter: Rhh is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rhh);
    if (es.info() != Eigen::Success)
        throw Error("MmseFilter: eigendecomposition failed");
    u_ = es.eigenvectors();
    eigvals_ = es.eigenvalues().cwiseMax(0.0);
}

Eigen::VectorXcd MmseFilter::apply(const Eigen::VectorXcd& h_ls, double rho) const
{
    if (h_ls.size() != size())
        throw Error("MmseFilter: pilot count mismatch");
    const Eigen::VectorXd w = eigvals_.array() / (eigvals_.array() + beta_ / rho);
    Eigen::VectorXcd c = u_.adjoint() * h_ls;
    c.array() *= w.array();
    return u_ * c;
}

Eigen::MatrixXcd MmseFilter::matrix(double rho) const
{
    const Eigen::VectorXd w = eigvals_.array() / (eigvals_.array() + beta_ / rho);
    return u_ * w.asDiagonal() * u_.adjoint();
}

PilotEstimate estimate_mmse(const PilotEstimate& ls, const SnrEstimate& snr, const MmseFilter& filter)
{
    PilotEstimate out = ls;
    out.kind = EstimatorKind::mmse;
    for (int r = 0; r < ls.n_rx; ++r)
        for (int t = 0; t < ls.n_tx; ++t) {
            auto& h = out.at(r, t);
            for (Eigen::Index j = 0; j < h.rows(); ++j)
                h.row(j) = filter.apply(ls.at(r, t).row(j).transpose(), snr.pair_rho(r, t)).transpose();
        }
    return out;
}

Eigen::VectorXcd spline_interpolate(const std::vector<int>& x, const Eigen::VectorXcd& y, int n_out)
{
    const int n = static_cast<int>(x.size());
    if (n != y.size() || n < 2)
        throw Error("spline_interpolate: need at least two matching points");
    for (int i = 1; i < n; ++i)
        if (x[i] <= x[i - 1])
            throw Error("spline_interpolate: abscissae must increase");

    // Second derivatives M_i with M_0 = M_{n-1} = 0 (natural), Thomas algorithm.
    std::vector<cf64> m(n, cf64{});
    if (n > 2) {
        std::vector<double> diag(n), upper(n);
        std::vector<cf64> rhs(n);
        for (int i = 1; i < n - 1; ++i) {
            const double h0 = x[i] - x[i - 1];
            const double h1 = x[i + 1] - x[i];
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        for (int i = 2; i < n - 1; ++i) {
            const double lower = x[i] - x[i - 1];
            const double f = lower / diag[i - 1];
            diag[i] -= f * upper[i - 1];
            rhs[i] -= f * rhs[i - 1];
        }
        for (int i = n - 2; i >= 1; --i)
            m[i] = (rhs[i] - (i + 1 < n - 1 ? upper[i] * m[i + 1] : cf64{})) / diag[i];
    }

    Eigen::VectorXcd out(n_out);
    int seg = 0;
    for (int k = 0; k < n_out; ++k) {
        while (seg < n - 2 && k > x[seg + 1])
            ++seg;
        const double h = x[seg + 1] - x[seg];
        if (k < x[0] || k > x[n - 1]) {
            // linear continuation with the end slope (M = 0 at the ends)
            const bool left = k < x[0];
            const int i = left ? 0 : n - 1;
            const double hh = left ? x[1] - x[0] : x[n - 1] - x[n - 2];
            const cf64 slope = left ? (y[1] - y[0]) / hh - hh * (2.0 * m[0] + m[1]) / 6.0
                                    : (y[n - 1] - y[n - 2]) / hh + hh * (m[n - 2] + 2.0 * m[n - 1]) / 6.0;
            out[k] = y[i] + slope * static_cast<double>(k - x[i]);
            continue;
        }
        const double a = (x[seg + 1] - k) / h;
        const double b = (k - x[seg]) / h;
        out[k] = a * y[seg] + b * y[seg + 1] +
                 ((a * a * a - a) * m[seg] + (b * b * b - b) * m[seg + 1]) * (h * h / 6.0);
    }
    return out;
}

namespace {

Eigen::VectorXcd linear_interpolate(const std::vector<int>& x, const Eigen::VectorXcd& y, int n_out)
{
    Eigen::VectorXcd out(n_out);
    const int n = static_cast<int>(x.size());
    if (n == 1) {
        out.setConstant(y[0]);
        return out;
    }
    int seg = 0;
    for (int k = 0; k < n_out; ++k) {
        while (seg < n - 2 && k > x[seg + 1])
            ++seg;
        const double f = static_cast<double>(k - x[seg]) / (x[seg + 1] - x[seg]);
        out[k] = y[seg] + f * (y[seg + 1] - y[seg]);
    }
    return out;
}

} // namespace

ChannelEstimate interpolate_estimate(const PilotEstimate& est, const PuschConfig& cfg)
{
    ChannelEstimate out;
    out.n_rx = est.n_rx;
    out.n_tx = est.n_tx;
    out.kind = est.kind;
    const int n_sc = cfg.n_subcarriers();
    const int n_dmrs = static_cast<int>(est.symbols.size());
    // DMRS symbols in time order
    std::vector<int> order(n_dmrs);
    for (int j = 0; j < n_dmrs; ++j)
        order[j] = j;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return est.symbols[a] < est.symbols[b]; });

    for (int r = 0; r < est.n_rx; ++r)
        for (int t = 0; t < est.n_tx; ++t) {
            const auto& sc = est.subcarriers[t];
            const auto& h = est.at(r, t);
            std::vector<Eigen::VectorXcd> freq(n_dmrs);
            for (int j = 0; j < n_dmrs; ++j) {
                const Eigen::VectorXcd row = h.row(j).transpose();
                if (sc.size() >= 4) {
                    freq[j] = spline_interpolate(sc, row, n_sc);
                } else {
                    freq[j] = linear_interpolate(sc, row, n_sc);
                    out.linear_fallback = true;
                }
            }
            GridPlane plane(waveform::kSymbolsPerSlot, n_sc);
            for (int l = 0; l < waveform::kSymbolsPerSlot; ++l) {
                if (n_dmrs == 1) {
                    plane.row(l) = freq[0].transpose();
                    continue;
                }
                int seg = 0;
                while (seg < n_dmrs - 2 && l > est.symbols[order[seg + 1]])
                    ++seg;
                const int l0 = est.symbols[order[seg]];
                const int l1 = est.symbols[order[seg + 1]];
                const double f = static_cast<double>(l - l0) / (l1 - l0);
                plane.row(l) = ((1.0 - f) * freq[order[seg]] + f * freq[order[seg + 1]]).transpose();
            }
            out.planes.push_back(std::move(plane));
        }
    return out;
}

} // namespace nrpusch::receiver
