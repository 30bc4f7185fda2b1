// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "nrpusch/common.hpp"
#include "nrpusch/ldpc/code.hpp"

namespace nrpusch::transport {

/// Circular-buffer geometry of one code block. The first 2*Z systematic bits are
/// never transmitted, so the buffer holds codeword bits [2Z, n).
struct CircularBuffer {
    ldpc::BaseGraphId base_graph = ldpc::BaseGraphId::bg1;
    int lifting = 0;
    int n = 0;     ///< full codeword length
    int n_cb = 0;  ///< n - 2Z

    static CircularBuffer for_code(const ldpc::LdpcCode& code);

    /// Start offset for redundancy version rv in 0..3 (a multiple of Z).
    int k0(int rv) const;
};

/// E_r for each of `blocks` code blocks sharing G coded bits over `layers` layers.
std::vector<int> block_e_sizes(int g_bits, int blocks, int layers, int qm);

/// Bit selection from the circular buffer (skipping fillers) followed by the Q_m-row interleaver.
Bits rate_match(const BitBlock& codeword, const CircularBuffer& cb, int e, int rv, int qm);

/// Codeword positions (in [0, n)) feeding each of the E selected bits, before interleaving.
std::vector<int> selected_positions(std::span<const std::uint8_t> filler, const CircularBuffer& cb,
                                    int e, int rv);

/// Soft-combining buffer of N_cb LLRs. Filler positions hold +kLlrMax.
class RateMatchBuffer {
public:
    RateMatchBuffer(const CircularBuffer& cb, std::vector<std::uint8_t> filler, int e);

    const CircularBuffer& layout() const noexcept { return cb_; }
    int expected_e() const noexcept { return e_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    std::span<const std::uint8_t> filler() const noexcept { return filler_; }

    /// n LLRs for the decoder: zeros for the punctured prefix, then the buffer.
    std::vector<double> decoder_input() const;

private:
    CircularBuffer cb_;
    std::vector<std::uint8_t> filler_;  ///< full-codeword filler mask (length n)
    int e_;
    std::vector<double> values_;        ///< length n_cb
};

/// De-interleaves E LLRs and adds them (saturating) into the circular buffer.
RateMatchBuffer rate_recover(std::span<const double> llrs, RateMatchBuffer buffer, int rv, int qm);

} // namespace nrpusch::transport
