// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/waveform/grid.hpp"

#include <cmath>

#include <fmt/format.h>

#include "nrpusch/waveform/gold.hpp"

namespace nrpusch::waveform {

DmrsPilots generate_dmrs(const PuschConfig& cfg, int port, int symbol)
{
    if (port < 0 || port >= cfg.n_layers)
        throw Error(fmt::format("generate_dmrs: port {} not configured", port));
    DmrsPilots p;
    p.symbol = symbol;
    const int n_sc = cfg.n_subcarriers();
    for (int k = port; k < n_sc; k += cfg.dmrs_spacing)
        p.subcarriers.push_back(k);
    const auto n = static_cast<Eigen::Index>(p.subcarriers.size());
    const Bits c = gold_sequence(dmrs_c_init(cfg.slot_number, symbol, cfg.scrambling_seed),
                                 2 * static_cast<std::size_t>(n));
    const double a = 1.0 / std::sqrt(2.0);
    p.values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        p.values[i] = a * cf64(1.0 - 2.0 * c[2 * i], 1.0 - 2.0 * c[2 * i + 1]);
    return p;
}

std::vector<DmrsPilots> generate_dmrs(const PuschConfig& cfg, int port)
{
    std::vector<DmrsPilots> out;
    for (int l : cfg.dmrs_symbols)
        out.push_back(generate_dmrs(cfg, port, l));
    return out;
}

ResourceGrid build_grid(const Eigen::VectorXcd& data, const PuschConfig& cfg)
{
    const int layers = cfg.n_layers;
    const int per_layer = cfg.data_res_per_layer();
    if (data.size() != static_cast<Eigen::Index>(layers) * per_layer)
        throw Error(fmt::format("build_grid: expected {} data symbols, got {}",
                                static_cast<long>(layers) * per_layer, data.size()));
    const int n_sc = cfg.n_subcarriers();
    ResourceGrid grid(layers, kSymbolsPerSlot, n_sc);
    Eigen::Index i = 0;
    for (int l : cfg.data_symbols())
        for (int k = 0; k < n_sc; ++k, ++i)
            for (int v = 0; v < layers; ++v)
                grid.planes[v](l, k) = data[layers * i + v];
    for (int v = 0; v < layers; ++v)
        for (const auto& p : generate_dmrs(cfg, v))
            for (std::size_t j = 0; j < p.subcarriers.size(); ++j)
                grid.planes[v](p.symbol, p.subcarriers[j]) = p.values[j];
    return grid;
}

Eigen::VectorXcd extract_data(const ResourceGrid& grid, const PuschConfig& cfg)
{
    const int layers = cfg.n_layers;
    if (grid.n_planes() < layers)
        throw Error("extract_data: grid has fewer planes than layers");
    const int n_sc = cfg.n_subcarriers();
    if (grid.n_subcarriers() != n_sc)
        throw Error("extract_data: subcarrier count mismatch");
    Eigen::VectorXcd out(static_cast<Eigen::Index>(layers) * cfg.data_res_per_layer());
    Eigen::Index i = 0;
    for (int l : cfg.data_symbols())
        for (int k = 0; k < n_sc; ++k, ++i)
            for (int v = 0; v < layers; ++v)
                out[layers * i + v] = grid.planes[v](l, k);
    return out;
}

} // namespace nrpusch::waveform
