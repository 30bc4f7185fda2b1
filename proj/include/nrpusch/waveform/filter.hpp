// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nrpusch/waveform/ofdm.hpp"

namespace nrpusch::waveform {

struct FilterSpec {
    double sample_rate = 0.0;
    double f_pass = 0.0;
    double f_stop = 0.0;
    int n_taps = 0;
};

/// F_pass = half the occupied bandwidth, F_stop = half the channel bandwidth.
FilterSpec tx_filter_spec(const Numerology& num, int n_prb, double bandwidth_hz, int n_taps);

/// Real symmetric (type I) lowpass from an unweighted least-squares fit over the pass and stop bands.
Eigen::VectorXd design_tx_filter(const FilterSpec& spec);
Eigen::VectorXd design_tx_filter(const Numerology& num, int n_prb, double bandwidth_hz, int n_taps);

/// |H(f)| at each frequency in Hz.
Eigen::VectorXd magnitude_response(const Eigen::VectorXd& h, const Eigen::VectorXd& freqs_hz,
                                   double sample_rate);

/// Linear convolution per antenna; group delay grows by (n_taps - 1) / 2.
TimeSignal apply_filter(const TimeSignal& sig, const Eigen::VectorXd& h);

} // namespace nrpusch::waveform
