// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nrpusch/receiver/estimation.hpp"

namespace nrpusch::receiver {

struct EqualizerOptions {
    /// Divide each layer by its MMSE gain [WG]_tt so constellations keep their scale.
    bool unbiased = true;
    /// Replace per-RE noise variances by their per-layer mean over each OFDM symbol.
    bool average_noise_per_symbol = true;
};

/// Layer-demapped data estimates (same order as waveform::extract_data) and their noise variances.
struct EqualizedSymbols {
    Eigen::VectorXcd symbols;
    Eigen::VectorXd noise_var;
};

/// Per data RE: W = G^H (G G^H + sigma^2 I)^-1 with sigma^2 = 1 / rho. The noise variance of layer t
/// is sum_{t' != t} |[WG]_tt'|^2 + sigma^2 [W W^H]_tt, divided by |[WG]_tt|^2 when unbiased.
EqualizedSymbols equalize_mmse(const ResourceGrid& rx, const ChannelEstimate& est, double rho,
                               const PuschConfig& cfg, const EqualizerOptions& opts = {});

/// RMS error over RMS reference of the DMRS after per-RE maximum-ratio combining with the
/// estimate, in percent.
double dmrs_evm_percent(const ResourceGrid& rx, const ChannelEstimate& est, const PuschConfig& cfg);

} // namespace nrpusch::receiver
