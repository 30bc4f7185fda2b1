// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <concepts>

#include "nrpusch/common.hpp"

namespace nrpusch::ldpc {

enum class BoxplusMode { exact, two_piece };

/// ln(1 + e^-|x|).
template <std::floating_point T>
inline T log1p_exp_neg(T x) noexcept
{
    return std::log1p(std::exp(-std::abs(x)));
}

/// Two-piece linear approximation of ln(1 + e^-|x|).
template <std::floating_point T>
constexpr T log1p_exp_neg_two_piece(T x) noexcept
{
    const T a = x < T(0) ? -x : x;
    return a < T(2.5) ? T(0.6) - T(0.24) * a : T(0);
}

/// Pairwise check-node combination of two LLRs, saturated at +-kLlrMax.
/// A zero input is an erasure: sign counts as positive, so boxplus(x, 0) = 0.
template <std::floating_point T>
inline T boxplus(T x1, T x2, BoxplusMode mode) noexcept
{
    const T a1 = std::abs(x1);
    const T a2 = std::abs(x2);
    const bool negative = (x1 < T(0)) != (x2 < T(0));
    const T m = a1 < a2 ? a1 : a2;
    T r = negative ? -m : m;
    if (mode == BoxplusMode::exact)
        r += log1p_exp_neg(x1 + x2) - log1p_exp_neg(x1 - x2);
    else
        r += log1p_exp_neg_two_piece(x1 + x2) - log1p_exp_neg_two_piece(x1 - x2);
    return saturate_llr(r);
}

} // namespace nrpusch::ldpc
