// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <concepts>
#include <span>

#include "nrpusch/common.hpp"
#include "nrpusch/ldpc/boxplus.hpp"
#include "nrpusch/ldpc/code.hpp"

namespace nrpusch::ldpc {

struct DecoderOptions {
    int max_iterations = 20;
    BoxplusMode mode = BoxplusMode::two_piece;
    /// Skip checks that own a degree-1 variable with a zero channel LLR (untransmitted
    /// extension parity). Such a check only ever sends zeros, so the other bits are
    /// unaffected; the pruned parity bits are excluded from the syndrome test.
    bool prune_erased_checks = false;
};

struct DecodeResult {
    Bits bits;
    bool converged = false;
    int iterations = 0;
};

/// Flooding-schedule sum-product decoding. Check-node updates use the pairwise
/// boxplus recursion (forward/backward partial combinations); message type is `T`.
template <std::floating_point T>
DecodeResult decode(const LdpcCode& code, std::span<const double> llr, const DecoderOptions& opts);

inline DecodeResult decode(const LdpcCode& code, std::span<const double> llr, int max_iterations,
                           BoxplusMode mode)
{
    return decode<double>(code, llr, DecoderOptions{max_iterations, mode, false});
}

extern template DecodeResult decode<float>(const LdpcCode&, std::span<const double>,
                                           const DecoderOptions&);
extern template DecodeResult decode<double>(const LdpcCode&, std::span<const double>,
                                            const DecoderOptions&);

} // namespace nrpusch::ldpc
