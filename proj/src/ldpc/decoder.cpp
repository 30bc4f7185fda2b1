// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/ldpc/decoder.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace nrpusch::ldpc {

template <std::floating_point T>
DecodeResult decode(const LdpcCode& code, std::span<const double> llr, const DecoderOptions& opts)
{
    const int n = code.n();
    const int m = code.m();
    if (static_cast<int>(llr.size()) != n)
        throw Error(fmt::format("decode: expected {} LLRs, got {}", n, llr.size()));
    if (opts.max_iterations < 1)
        throw Error("decode: max_iterations must be >= 1");

    const auto row_ptr = code.row_offsets();
    const auto var = code.column_indices();
    const auto degree = code.column_degrees();
    const std::size_t n_edges = var.size();

    std::vector<T> channel(n);
    for (int i = 0; i < n; ++i)
        channel[i] = saturate_llr(static_cast<T>(llr[i]));

    std::vector<std::uint8_t> active(m, 1);
    if (opts.prune_erased_checks) {
        for (int r = 0; r < m; ++r)
            for (int e = row_ptr[r]; e < row_ptr[r + 1]; ++e)
                if (degree[var[e]] == 1 && channel[var[e]] == T(0))
                    active[r] = 0;
    }

    // Initialization: v2c = channel LLR, c2v = 0.
    std::vector<T> v2c(n_edges);
    std::vector<T> c2v(n_edges, T(0));
    for (std::size_t e = 0; e < n_edges; ++e)
        v2c[e] = channel[var[e]];

    std::vector<T> total(n);
    std::vector<T> fwd;
    std::vector<T> bwd;
    DecodeResult result;
    result.bits.assign(n, 0);

    for (int it = 1; it <= opts.max_iterations; ++it) {
        // Step I: check-node update from pairwise partial combinations.
        for (int r = 0; r < m; ++r) {
            if (!active[r])
                continue;
            const int e0 = row_ptr[r];
            const int d = row_ptr[r + 1] - e0;
            const T* in = v2c.data() + e0;
            T* out = c2v.data() + e0;
            if (d == 1) {
                out[0] = T(0);
                continue;
            }
            fwd.resize(d);
            bwd.resize(d);
            fwd[0] = in[0];
            for (int i = 1; i < d; ++i)
                fwd[i] = boxplus(fwd[i - 1], in[i], opts.mode);
            bwd[d - 1] = in[d - 1];
            for (int i = d - 2; i >= 0; --i)
                bwd[i] = boxplus(bwd[i + 1], in[i], opts.mode);
            out[0] = bwd[1];
            out[d - 1] = fwd[d - 2];
            for (int i = 1; i < d - 1; ++i)
                out[i] = boxplus(fwd[i - 1], bwd[i + 1], opts.mode);
        }

        // Step II: a-posteriori totals and extrinsic variable-to-check messages.
        std::copy(channel.begin(), channel.end(), total.begin());
        for (int r = 0; r < m; ++r) {
            if (!active[r])
                continue;
            for (int e = row_ptr[r]; e < row_ptr[r + 1]; ++e)
                total[var[e]] += c2v[e];
        }
        for (int r = 0; r < m; ++r) {
            if (!active[r])
                continue;
            for (int e = row_ptr[r]; e < row_ptr[r + 1]; ++e)
                v2c[e] = saturate_llr(total[var[e]] - c2v[e]);
        }

        // Step III: hard decision and syndrome test.
        for (int i = 0; i < n; ++i)
            result.bits[i] = total[i] > T(0) ? 0 : 1;
        bool ok = true;
        for (int r = 0; r < m && ok; ++r) {
            if (!active[r])
                continue;
            std::uint8_t acc = 0;
            for (int e = row_ptr[r]; e < row_ptr[r + 1]; ++e)
                acc ^= result.bits[var[e]];
            ok = (acc & 1U) == 0;
        }
        result.iterations = it;
        if (ok) {
            result.converged = true;
            break;
        }
    }
    return result;
}

template DecodeResult decode<float>(const LdpcCode&, std::span<const double>, const DecoderOptions&);
template DecodeResult decode<double>(const LdpcCode&, std::span<const double>,
                                     const DecoderOptions&);

} // namespace nrpusch::ldpc
