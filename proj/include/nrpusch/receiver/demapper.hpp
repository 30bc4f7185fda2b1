// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "nrpusch/waveform/modulation.hpp"

namespace nrpusch::receiver {

using waveform::Modulation;

/// Max-log LLRs, L > 0 for bit 0: -(min_{S0}|x-s|^2 - min_{S1}|x-s|^2) / sigma^2, saturated.
/// Square Gray QAM separates per axis, so each bit only looks at its own axis.
std::vector<double> demap_llr(const Eigen::VectorXcd& symbols, const Eigen::VectorXd& noise_var,
                              Modulation m);

/// Same, with one noise variance for all symbols.
std::vector<double> demap_llr(const Eigen::VectorXcd& symbols, double noise_var, Modulation m);

/// LLR sign flip wherever the scrambling sequence is 1.
void descramble_llr(std::vector<double>& llr, std::uint32_t seed);

} // namespace nrpusch::receiver
