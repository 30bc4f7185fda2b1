// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/receiver/equalizer.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nrpusch::receiver {

namespace {

// Small fixed-capacity matrices keep the per-RE work off the heap.
using SmallMat = Eigen::Matrix<cf64, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using SmallVec = Eigen::Matrix<cf64, Eigen::Dynamic, 1, 0, 4, 1>;

} // namespace

EqualizedSymbols equalize_mmse(const ResourceGrid& rx, const ChannelEstimate& est, double rho,
                               const PuschConfig& cfg, const EqualizerOptions& opts)
{
    const int n_rx = rx.n_planes();
    const int n_t = cfg.n_layers;
    if (est.n_rx != n_rx || est.n_tx != n_t)
        throw Error("equalize_mmse: estimate dimensions do not match");
    if (n_t > n_rx)
        throw Error("equalize_mmse: more layers than receive antennas");
    if (n_rx > 4)
        throw Error("equalize_mmse: at most 4 receive antennas");
    if (!(rho > 0.0))
        throw Error("equalize_mmse: rho must be positive");
    const double sigma2 = 1.0 / rho;
    const int n_sc = cfg.n_subcarriers();
    const auto data_syms = cfg.data_symbols();

    EqualizedSymbols out;
    const Eigen::Index total = static_cast<Eigen::Index>(n_t) * cfg.data_res_per_layer();
    out.symbols.resize(total);
    out.noise_var.resize(total);

    SmallMat g(n_rx, n_t);
    SmallVec y(n_rx);
    Eigen::Index i = 0;
    for (int l : data_syms) {
        const Eigen::Index row_begin = i;
        for (int k = 0; k < n_sc; ++k, ++i) {
            for (int r = 0; r < n_rx; ++r) {
                y[r] = rx.planes[r](l, k);
                for (int t = 0; t < n_t; ++t)
                    g(r, t) = est.at(r, t)(l, k);
            }
            SmallMat gram = g * g.adjoint();
            gram.diagonal().array() += sigma2;
            const SmallMat w = g.adjoint() * gram.inverse();
            const SmallMat wg = w * g;
            const SmallVec s = w * y;
            for (int t = 0; t < n_t; ++t) {
                double nu = sigma2 * w.row(t).squaredNorm();
                for (int u = 0; u < n_t; ++u)
                    if (u != t)
                        nu += std::norm(wg(t, u));
                cf64 v = s[t];
                if (opts.unbiased) {
                    const double mu = std::max(wg(t, t).real(), 1e-12);
                    v /= mu;
                    nu /= mu * mu;
                }
                out.symbols[n_t * i + t] = v;
                out.noise_var[n_t * i + t] = std::max(nu, 1e-12);
            }
        }
        if (opts.average_noise_per_symbol) {
            auto seg = out.noise_var.segment(n_t * row_begin, n_t * static_cast<Eigen::Index>(n_sc));
            Eigen::Map<Eigen::MatrixXd> per_layer(seg.data(), n_t, n_sc);
            const Eigen::VectorXd mean = per_layer.rowwise().mean();
            per_layer.colwise() = mean;
        }
    }
    return out;
}

double dmrs_evm_percent(const ResourceGrid& rx, const ChannelEstimate& est, const PuschConfig& cfg)
{
    double err = 0.0;
    double ref = 0.0;
    for (int t = 0; t < cfg.n_layers; ++t)
        for (const auto& p : waveform::generate_dmrs(cfg, t))
            for (std::size_t i = 0; i < p.subcarriers.size(); ++i) {
                const int k = p.subcarriers[i];
                cf64 num{};
                double den = 0.0;
                for (int r = 0; r < rx.n_planes(); ++r) {
                    const cf64 g = est.at(r, t)(p.symbol, k);
                    num += std::conj(g) * rx.planes[r](p.symbol, k);
                    den += std::norm(g);
                }
                const cf64 x = den > 0 ? num / den : cf64{};
                err += std::norm(x - p.values[i]);
                ref += std::norm(p.values[i]);
            }
    return ref > 0 ? 100.0 * std::sqrt(err / ref) : 0.0;
}

} // namespace nrpusch::receiver
