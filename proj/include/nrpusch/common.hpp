// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nrpusch {

using cf64 = std::complex<double>;
using Bits = std::vector<std::uint8_t>;

/// Row-major complex plane: rows are OFDM symbols, columns are subcarriers.
using GridPlane = Eigen::Matrix<cf64, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kPi = 3.14159265358979323846;

/// LLR magnitude bound. Positive LLR means bit 0 is more likely.
inline constexpr double kLlrMax = 64.0;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <typename T>
constexpr T saturate_llr(T v) noexcept
{
    return v > T(kLlrMax) ? T(kLlrMax) : (v < T(-kLlrMax) ? T(-kLlrMax) : v);
}

/// Bits with a filler mask; filler positions always hold 0 and are never transmitted.
struct BitBlock {
    Bits bits;
    std::vector<std::uint8_t> filler;

    BitBlock() = default;
    explicit BitBlock(Bits b) : bits(std::move(b)), filler(bits.size(), 0) {}
    BitBlock(Bits b, std::vector<std::uint8_t> f) : bits(std::move(b)), filler(std::move(f))
    {
        if (bits.size() != filler.size())
            throw Error("bit block: mask length mismatch");
    }

    std::size_t size() const noexcept { return bits.size(); }
};

/// Default location of the shipped data assets (set at configure time).
std::filesystem::path default_data_dir();

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Reads `<path>.sha256` and returns the first token.
std::string read_checksum_sidecar(const std::filesystem::path& path);

} // namespace nrpusch
