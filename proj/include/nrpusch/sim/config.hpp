// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "nrpusch/ldpc/boxplus.hpp"
#include "nrpusch/receiver/estimation.hpp"
#include "nrpusch/waveform/numerology.hpp"

namespace nrpusch::sim {

struct SimConfig {
    waveform::Numerology numerology;
    waveform::PuschConfig pusch;
    int n_rx = 2;
    double bandwidth_hz = 40e6;
    int filter_taps = 153;  ///< 0 disables the transmit filter

    std::string channel = "awgn";  ///< "awgn" or a TDL profile name
    double doppler_hz = 0.0;
    double cfo_hz = 0.0;
    int sto_samples = 0;

    double snr_start_db = 0.0;
    double snr_stop_db = 0.0;
    double snr_step_db = 1.0;

    int trials = 1000;            ///< slots per point (cap)
    int max_block_errors = 100;   ///< early stop; 0 disables
    std::uint64_t seed = 1;

    int decoder_iterations = 20;
    ldpc::BoxplusMode boxplus = ldpc::BoxplusMode::two_piece;
    receiver::EstimatorKind estimator = receiver::EstimatorKind::mmse;
    bool genie = false;  ///< true channel, true noise variance, no sync stage

    std::filesystem::path data_dir;  ///< empty = built-in default

    bool fading() const { return channel != "awgn"; }
    std::vector<double> snr_points() const;
    std::filesystem::path resolved_data_dir() const;
    void validate() const;
};

/// Flat "key = value" text; '#' starts a comment. Unknown keys are errors.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

/// Canonical key = value dump; parse_config(to_text(c)) reproduces c.
std::string to_text(const SimConfig& cfg);

} // namespace nrpusch::sim
