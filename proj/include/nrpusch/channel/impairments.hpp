// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>

#include "nrpusch/channel/fading.hpp"
#include "nrpusch/waveform/ofdm.hpp"

namespace nrpusch::channel {

using waveform::TimeSignal;

inline constexpr double kNoiselessSnr = std::numeric_limits<double>::infinity();

struct AwgnOptions {
    double reference_power = -1.0;   ///< signal power per antenna; < 0 measures it per antenna
    double bandwidth_fraction = 1.0; ///< occupied share of the sample rate; the SNR is in-band
};

/// Mean sample power of antenna a over the slot body (filter tails excluded).
double signal_power(const TimeSignal& sig, int antenna);

/// Noise variance per complex sample for an in-band SNR.
double noise_variance(double signal_power, double snr_db, double bandwidth_fraction = 1.0);

/// Adds circular complex Gaussian noise per antenna. snr_db = +inf leaves the input untouched.
TimeSignal awgn(const TimeSignal& sig, double snr_db, std::mt19937_64& rng, const AwgnOptions& opts = {});

struct ImpairmentSpec {
    double snr_db = kNoiselessSnr;
    double cfo_hz = 0.0;
    int sto_samples = 0;
    double doppler_hz = 0.0;
    std::optional<TdlProfile> profile;  ///< empty = AWGN only (identity spatial channel)
    double bandwidth_fraction = 1.0;
};

/// Convolves with the realization, applies CFO and integer STO, then adds noise referenced to the
/// mean input power per transmit antenna. Output keeps the input group delay and grows by the
/// largest tap delay.
TimeSignal apply_channel(const TimeSignal& sig, const ChannelRealization& real, const ImpairmentSpec& imp,
                         std::mt19937_64& rng);

} // namespace nrpusch::channel
