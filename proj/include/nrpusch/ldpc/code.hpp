// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nrpusch/common.hpp"
#include "nrpusch/ldpc/base_graph.hpp"

namespace nrpusch::ldpc {

/// Dense GF(2) matrix with bit-packed rows.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(int rows, int cols);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    int words_per_row() const noexcept { return words_; }

    bool get(int r, int c) const noexcept
    {
        return (data_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1U;
    }
    void set(int r, int c, bool v) noexcept
    {
        auto& w = data_[static_cast<std::size_t>(r) * words_ + c / 64];
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    }
    void flip(int r, int c) noexcept
    {
        data_[static_cast<std::size_t>(r) * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
    }

    std::span<std::uint64_t> row(int r)
    {
        return {data_.data() + static_cast<std::size_t>(r) * words_, static_cast<std::size_t>(words_)};
    }
    std::span<const std::uint64_t> row(int r) const
    {
        return {data_.data() + static_cast<std::size_t>(r) * words_, static_cast<std::size_t>(words_)};
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Lifted QC-LDPC code partitioned as H = [C D E; A B T] with E = 0 and T = I.
///
/// The expanded parity-check matrix is stored row-wise (CSR); D^-1 C is
/// computed once at construction by Gauss-Jordan elimination over GF(2).
class LdpcCode {
public:
    BaseGraphId base_graph() const noexcept { return bg_; }
    int set_index() const noexcept { return set_index_; }
    int lifting() const noexcept { return z_; }
    int n() const noexcept { return n_; }
    int m() const noexcept { return m_; }
    int k() const noexcept { return n_ - m_; }
    int gap() const noexcept { return g_; }
    std::size_t edges() const noexcept { return cols_.size(); }

    /// Column indices of row r of H.
    std::span<const int> row(int r) const
    {
        return {cols_.data() + row_ptr_[r], static_cast<std::size_t>(row_ptr_[r + 1] - row_ptr_[r])};
    }
    std::span<const int> row_offsets() const noexcept { return row_ptr_; }
    std::span<const int> column_indices() const noexcept { return cols_; }
    std::span<const int> column_degrees() const noexcept { return col_degree_; }

    const Gf2Matrix& dinv_c() const noexcept { return dinv_c_; }

    /// True when H d^T = 0 over GF(2).
    bool satisfies_parity(std::span<const std::uint8_t> d) const;

    friend LdpcCode build_code(const BaseGraph& bg, int lifting);

private:
    BaseGraphId bg_ = BaseGraphId::custom;
    int set_index_ = 0;
    int z_ = 0;
    int n_ = 0;
    int m_ = 0;
    int g_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> cols_;
    std::vector<int> col_degree_;
    Gf2Matrix dinv_c_;
};

/// Expands `bg` with lifting size `lifting`, verifies the partition and caches D^-1 C.
/// Throws when the lifting size is not in the graph's shift set or D is singular.
LdpcCode build_code(const BaseGraph& bg, int lifting);

/// Systematic encoding d = [s, p1, p2]: p1 = D^-1 C s, p2 = A s + B p1.
BitBlock encode(const LdpcCode& code, const BitBlock& info);
Bits encode(const LdpcCode& code, std::span<const std::uint8_t> info);

} // namespace nrpusch::ldpc
