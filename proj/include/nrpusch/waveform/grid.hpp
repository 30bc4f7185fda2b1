// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "nrpusch/waveform/numerology.hpp"

namespace nrpusch::waveform {

/// One GridPlane (symbols x allocated subcarriers) per antenna port or receive antenna.
struct ResourceGrid {
    std::vector<GridPlane> planes;

    ResourceGrid() = default;
    ResourceGrid(int n_planes, int n_symbols, int n_subcarriers)
        : planes(n_planes, GridPlane::Zero(n_symbols, n_subcarriers))
    {
    }

    int n_planes() const noexcept { return static_cast<int>(planes.size()); }
    int n_symbols() const noexcept { return planes.empty() ? 0 : static_cast<int>(planes[0].rows()); }
    int n_subcarriers() const noexcept
    {
        return planes.empty() ? 0 : static_cast<int>(planes[0].cols());
    }
};

/// Pilots of one port on one DMRS symbol.
struct DmrsPilots {
    int symbol = 0;
    std::vector<int> subcarriers;  ///< allocation-relative comb positions
    Eigen::VectorXcd values;       ///< unit-modulus QPSK
};

DmrsPilots generate_dmrs(const PuschConfig& cfg, int port, int symbol);
/// All DMRS symbols of the slot for `port`, in cfg.dmrs_symbols order.
std::vector<DmrsPilots> generate_dmrs(const PuschConfig& cfg, int port);

/// Layer-maps `data` (layer v takes symbols v, v + L, ...) and fills data REs symbol by symbol,
/// then inserts the DMRS. A 14-symbol grid is produced regardless of n_symbols.
ResourceGrid build_grid(const Eigen::VectorXcd& data, const PuschConfig& cfg);

/// Inverse of the data part of build_grid: gathers data REs of planes[0..n_layers) and layer-demaps.
Eigen::VectorXcd extract_data(const ResourceGrid& grid, const PuschConfig& cfg);

} // namespace nrpusch::waveform
