// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nrpusch/common.hpp"

namespace nrpusch::channel {

struct TdlTap {
    double delay_s = 0.0;
    double power = 0.0;  ///< linear, profile normalised to unit total
};

struct TdlProfile {
    std::string name;
    std::vector<TdlTap> taps;

    /// Delays rounded to whole samples at `sample_rate`.
    std::vector<int> delay_samples(double sample_rate) const;
};

/// Parses `# NAME` + `delay_ns,power_db` CSV text; sorts by delay and normalises powers.
TdlProfile parse_tdl_profile(std::string_view text);

/// Loads and checks against the `.sha256` sidecar.
TdlProfile load_tdl_profile(const std::filesystem::path& path);

/// Looks up data/tdl/<lowercase name>.csv.
TdlProfile load_tdl_profile(const std::filesystem::path& data_dir, std::string_view name);

} // namespace nrpusch::channel
