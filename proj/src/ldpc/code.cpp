// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/ldpc/code.hpp"

#include <algorithm>
#include <bit>

#include <fmt/format.h>

namespace nrpusch::ldpc {

Gf2Matrix::Gf2Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>((cols + 63) / 64), 0)
{
}

bool LdpcCode::satisfies_parity(std::span<const std::uint8_t> d) const
{
    if (static_cast<int>(d.size()) != n_)
        throw Error("parity check: length mismatch");
    for (int r = 0; r < m_; ++r) {
        std::uint8_t acc = 0;
        for (int c : row(r))
            acc ^= d[c];
        if (acc & 1U)
            return false;
    }
    return true;
}

LdpcCode build_code(const BaseGraph& bg, int lifting)
{
    if (lifting < 1)
        throw Error("lifting size must be positive");
    if (bg.id != BaseGraphId::custom && lifting_set_index(lifting) != bg.set_index)
        throw Error(fmt::format("lifting size {} not in shift set {}", lifting, bg.set_index));

    LdpcCode code;
    code.bg_ = bg.id;
    code.set_index_ = bg.set_index;
    code.z_ = lifting;
    code.n_ = bg.cols * lifting;
    code.m_ = bg.rows * lifting;
    code.g_ = 4 * lifting;
    const int z = lifting;
    const int k = code.n_ - code.m_;
    const int g = code.g_;
    if (code.m_ < g)
        throw Error("base graph has fewer than 4 block rows");

    // Expand the circulants into CSR rows, columns sorted within each row.
    std::vector<std::vector<int>> rows(code.m_);
    for (const auto& e : bg.entries) {
        const int s = e.shift % z;
        for (int r = 0; r < z; ++r)
            rows[e.row * z + r].push_back(e.col * z + (r + s) % z);
    }
    code.row_ptr_.assign(1, 0);
    code.col_degree_.assign(code.n_, 0);
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        for (int c : r) {
            code.cols_.push_back(c);
            ++code.col_degree_[c];
        }
        code.row_ptr_.push_back(static_cast<int>(code.cols_.size()));
    }

    // E = 0 and T = I.
    const int ext_col0 = k + g;
    for (int r = 0; r < code.m_; ++r) {
        for (int c : code.row(r)) {
            if (c < ext_col0)
                continue;
            if (r < g)
                throw Error("partition check failed: E is not zero");
            if (c != ext_col0 + (r - g))
                throw Error("partition check failed: T is not the identity");
        }
        if (r >= g) {
            const auto cols = code.row(r);
            if (std::find(cols.begin(), cols.end(), ext_col0 + (r - g)) == cols.end())
                throw Error("partition check failed: T is not the identity");
        }
    }

    // Gauss-Jordan on [D | C] over GF(2); afterwards the right part is D^-1 C.
    Gf2Matrix aug(g, g + k);
    for (int r = 0; r < g; ++r)
        for (int c : code.row(r)) {
            if (c < k)
                aug.set(r, g + c, true);
            else if (c < k + g)
                aug.set(r, c - k, true);
        }
    const int words = aug.words_per_row();
    for (int col = 0; col < g; ++col) {
        int pivot = -1;
        for (int r = col; r < g; ++r)
            if (aug.get(r, col)) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            throw Error("D singular");
        if (pivot != col) {
            auto a = aug.row(pivot);
            auto b = aug.row(col);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        const auto prow = aug.row(col);
        for (int r = 0; r < g; ++r) {
            if (r == col || !aug.get(r, col))
                continue;
            auto dst = aug.row(r);
            for (int w = col / 64; w < words; ++w)
                dst[w] ^= prow[w];
        }
    }
    code.dinv_c_ = Gf2Matrix(g, k);
    for (int r = 0; r < g; ++r)
        for (int c = 0; c < k; ++c)
            if (aug.get(r, g + c))
                code.dinv_c_.set(r, c, true);
    return code;
}

Bits encode(const LdpcCode& code, std::span<const std::uint8_t> info)
{
    const int k = code.k();
    const int g = code.gap();
    if (static_cast<int>(info.size()) != k)
        throw Error(fmt::format("encode: length mismatch ({} != {})", info.size(), k));

    Bits d(code.n(), 0);
    std::copy(info.begin(), info.end(), d.begin());

    std::vector<std::uint64_t> packed((k + 63) / 64, 0);
    for (int i = 0; i < k; ++i)
        if (info[i] & 1U)
            packed[i / 64] |= std::uint64_t{1} << (i % 64);

    const auto& dc = code.dinv_c();
    for (int r = 0; r < g; ++r) {
        const auto row = dc.row(r);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < packed.size(); ++w)
            acc ^= row[w] & packed[w];
        d[k + r] = static_cast<std::uint8_t>(std::popcount(acc) & 1);
    }

    // T = I: each extension parity bit closes its own row.
    const int ext_col0 = k + g;
    for (int r = g; r < code.m(); ++r) {
        std::uint8_t acc = 0;
        for (int c : code.row(r))
            if (c < ext_col0)
                acc ^= d[c];
        d[ext_col0 + (r - g)] = acc & 1U;
    }
    return d;
}

BitBlock encode(const LdpcCode& code, const BitBlock& info)
{
    BitBlock out(encode(code, std::span<const std::uint8_t>(info.bits)));
    std::copy(info.filler.begin(), info.filler.end(), out.filler.begin());
    return out;
}

} // namespace nrpusch::ldpc
