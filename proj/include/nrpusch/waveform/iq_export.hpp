// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <vector>

#include "nrpusch/waveform/ofdm.hpp"

namespace nrpusch::waveform {

inline constexpr int kIqFormatVersion = 1;

/// Writes `<stem>_ant<i>.cf32` (interleaved little-endian float32 I/Q) per antenna plus
/// `<stem>.json` with sample rate, format version and lengths. Returns the files written.
std::vector<std::filesystem::path> export_iq(const TimeSignal& sig, const std::filesystem::path& stem);

/// Reads back what export_iq wrote (precision reduced to float32).
TimeSignal import_iq(const std::filesystem::path& stem);

} // namespace nrpusch::waveform
