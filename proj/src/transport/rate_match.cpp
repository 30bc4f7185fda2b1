// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/transport/rate_match.hpp"

#include <fmt/format.h>

namespace nrpusch::transport {

CircularBuffer CircularBuffer::for_code(const ldpc::LdpcCode& code)
{
    CircularBuffer cb;
    cb.base_graph = code.base_graph();
    cb.lifting = code.lifting();
    cb.n = code.n();
    cb.n_cb = code.n() - 2 * code.lifting();
    return cb;
}

int CircularBuffer::k0(int rv) const
{
    if (rv < 0 || rv > 3)
        throw Error("rate matching: rv must be in 0..3");
    static constexpr int bg1_num[4] = {0, 17, 33, 56};
    static constexpr int bg2_num[4] = {0, 13, 25, 43};
    const bool bg1 = base_graph != ldpc::BaseGraphId::bg2;
    const long num = bg1 ? bg1_num[rv] : bg2_num[rv];
    const long den = (bg1 ? 66L : 50L) * lifting;
    return static_cast<int>((num * n_cb) / den) * lifting;
}

std::vector<int> block_e_sizes(int g_bits, int blocks, int layers, int qm)
{
    if (blocks < 1 || layers < 1 || qm < 1)
        throw Error("block_e_sizes: invalid arguments");
    const int unit = layers * qm;
    const int symbols = g_bits / unit;
    std::vector<int> out(blocks);
    const int small_count = blocks - symbols % blocks;
    for (int r = 0; r < blocks; ++r)
        out[r] = unit * (r < small_count ? symbols / blocks : (symbols + blocks - 1) / blocks);
    return out;
}

std::vector<int> selected_positions(std::span<const std::uint8_t> filler, const CircularBuffer& cb,
                                    int e, int rv)
{
    if (e <= 0)
        throw Error("rate matching: E must be positive");
    if (static_cast<int>(filler.size()) != cb.n)
        throw Error("rate matching: codeword length mismatch");
    const int offset = 2 * cb.lifting;
    int transmittable = 0;
    for (int j = offset; j < cb.n; ++j)
        transmittable += filler[j] ? 0 : 1;
    if (transmittable == 0)
        throw Error("rate matching: buffer holds only filler bits");

    std::vector<int> pos;
    pos.reserve(e);
    const int start = cb.k0(rv);
    for (long j = 0; static_cast<int>(pos.size()) < e; ++j) {
        const int idx = offset + static_cast<int>((start + j) % cb.n_cb);
        if (!filler[idx])
            pos.push_back(idx);
    }
    return pos;
}

Bits rate_match(const BitBlock& codeword, const CircularBuffer& cb, int e, int rv, int qm)
{
    if (qm < 1 || e % qm != 0)
        throw Error("rate matching: E must be a multiple of Q_m");
    const auto pos = selected_positions(codeword.filler, cb, e, rv);
    const int cols = e / qm;
    Bits out(e);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < qm; ++i)
            out[i + j * qm] = codeword.bits[pos[i * cols + j]];
    return out;
}

RateMatchBuffer::RateMatchBuffer(const CircularBuffer& cb, std::vector<std::uint8_t> filler, int e)
    : cb_(cb), filler_(std::move(filler)), e_(e), values_(cb.n_cb, 0.0)
{
    if (static_cast<int>(filler_.size()) != cb_.n)
        throw Error("rate recovery: filler mask length mismatch");
    for (int j = 0; j < cb_.n_cb; ++j)
        if (filler_[2 * cb_.lifting + j])
            values_[j] = kLlrMax;
}

std::vector<double> RateMatchBuffer::decoder_input() const
{
    std::vector<double> out(cb_.n, 0.0);
    std::copy(values_.begin(), values_.end(), out.begin() + 2 * cb_.lifting);
    for (int j = 0; j < 2 * cb_.lifting; ++j)
        if (filler_[j])
            out[j] = kLlrMax;
    return out;
}

RateMatchBuffer rate_recover(std::span<const double> llrs, RateMatchBuffer buffer, int rv, int qm)
{
    const int e = static_cast<int>(llrs.size());
    if (e != buffer.expected_e())
        throw Error(fmt::format("rate recovery: E mismatch ({} != {})", e, buffer.expected_e()));
    if (qm < 1 || e % qm != 0)
        throw Error("rate recovery: E must be a multiple of Q_m");
    const auto pos = selected_positions(buffer.filler(), buffer.layout(), e, rv);
    const int cols = e / qm;
    const int offset = 2 * buffer.layout().lifting;
    auto values = buffer.values();
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < qm; ++i) {
            double& slot = values[pos[i * cols + j] - offset];
            slot = saturate_llr(slot + llrs[i + j * qm]);
        }
    return buffer;
}

} // namespace nrpusch::transport
