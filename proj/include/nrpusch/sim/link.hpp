// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>

#include "nrpusch/channel/fading.hpp"
#include "nrpusch/channel/tdl.hpp"
#include "nrpusch/ldpc/code.hpp"
#include "nrpusch/receiver/estimation.hpp"
#include "nrpusch/sim/config.hpp"
#include "nrpusch/sim/mcs.hpp"
#include "nrpusch/transport/segmentation.hpp"

namespace nrpusch::sim {

/// Counters of one simulated slot. All fields add up across slots.
struct SlotResult {
    long blocks = 0;
    long block_errors = 0;
    long coded_bits = 0;
    long coded_bit_errors = 0;  ///< hard decisions before decoding
    long info_bits = 0;
    long info_bit_errors = 0;   ///< transport block payload after decoding
    long decoded_blocks = 0;
    long iterations = 0;
    double evm_pct = 0.0;       ///< DMRS EVM of this slot

    SlotResult& operator+=(const SlotResult& o);
};

/// The channel every RE sees after demodulation: tap gains sampled at each FFT window centre.
/// `phase` is a common rotation to apply (left over by a known-CFO correction).
receiver::ChannelEstimate true_channel(const channel::ChannelRealization& real, const SimConfig& cfg,
                                       int group_delay, cf64 phase = 1.0);

/// Optional per-slot internals for debugging.
struct SlotTrace {
    receiver::ChannelEstimate estimate;
    double snr_estimate_db = 0.0;
    double cfo_estimate_hz = 0.0;
    double sto_estimate_samples = 0.0;
};

/// Transmit and receive one slot end to end. Construction loads the assets and precomputes the
/// code, transmit filter and MMSE smoother; run_slot is const and safe to call concurrently.
class LinkSimulator {
public:
    explicit LinkSimulator(const SimConfig& cfg);

    SlotResult run_slot(double snr_db, std::uint64_t seed, SlotTrace* trace = nullptr) const;

    const SimConfig& config() const noexcept { return cfg_; }
    const McsEntry& mcs() const noexcept { return mcs_; }
    int code_blocks() const noexcept { return n_blocks_; }
    ldpc::BaseGraphId base_graph() const noexcept { return code_.base_graph(); }
    int lifting() const noexcept { return code_.lifting(); }
    /// SHA-256 of every data asset in use, by file name.
    const std::map<std::string, std::string>& asset_checksums() const noexcept { return checksums_; }

private:
    SimConfig cfg_;
    McsEntry mcs_;
    ldpc::LdpcCode code_;
    int n_blocks_ = 0;
    Eigen::VectorXd tx_filter_;
    std::optional<channel::TdlProfile> profile_;
    std::optional<receiver::MmseFilter> mmse_;
    std::map<std::string, std::string> checksums_;
};

} // namespace nrpusch::sim
