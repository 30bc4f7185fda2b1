// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/ldpc/base_graph.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>
#include <string>

#include <fmt/format.h>

#include "nrpusch/common.hpp"

namespace nrpusch::ldpc {
namespace {

constexpr std::array<std::array<int, 8>, 8> kLiftingSets{{
    {2, 4, 8, 16, 32, 64, 128, 256},
    {3, 6, 12, 24, 48, 96, 192, 384},
    {5, 10, 20, 40, 80, 160, 320, 0},
    {7, 14, 28, 56, 112, 224, 0, 0},
    {9, 18, 36, 72, 144, 288, 0, 0},
    {11, 22, 44, 88, 176, 352, 0, 0},
    {13, 26, 52, 104, 208, 0, 0, 0},
    {15, 30, 60, 120, 240, 0, 0, 0},
}};

std::vector<int> sorted_lifting_sizes()
{
    std::vector<int> out;
    for (const auto& set : kLiftingSets)
        for (int z : set)
            if (z > 0)
                out.push_back(z);
    std::sort(out.begin(), out.end());
    return out;
}

int expected_entries(BaseGraphId id)
{
    return id == BaseGraphId::bg1 ? 316 : 197;
}

int parse_int(std::string_view field, int line_no)
{
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
        field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
        field.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw Error(fmt::format("base graph: malformed field on line {}", line_no));
    return value;
}

} // namespace

int base_graph_rows(BaseGraphId id)
{
    return id == BaseGraphId::bg1 ? 46 : 42;
}

int base_graph_cols(BaseGraphId id)
{
    return id == BaseGraphId::bg1 ? 68 : 52;
}

int base_graph_info_cols(BaseGraphId id)
{
    return id == BaseGraphId::bg1 ? 22 : 10;
}

std::span<const int> lifting_sizes()
{
    static const std::vector<int> sizes = sorted_lifting_sizes();
    return sizes;
}

int lifting_set_index(int z)
{
    for (int s = 0; s < 8; ++s)
        for (int v : kLiftingSets[s])
            if (v == z && v > 0)
                return s;
    return -1;
}

BaseGraph load_base_graph(std::string_view asset, BaseGraphId id, int set_index,
                          std::string_view expected_sha256)
{
    if (id == BaseGraphId::custom)
        throw Error("base graph: custom graphs are built in code, not loaded");
    if (set_index < 0 || set_index > 7)
        throw Error("base graph: set index out of range");
    if (sha256_hex(asset) != expected_sha256)
        throw Error("base graph: checksum mismatch");

    BaseGraph bg;
    bg.id = id;
    bg.set_index = set_index;
    bg.rows = base_graph_rows(id);
    bg.cols = base_graph_cols(id);

    std::set<std::pair<int, int>> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < asset.size()) {
        std::size_t eol = asset.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = asset.size();
        std::string_view line = asset.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line == "\r" || line.front() == '#')
            continue;

        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos)
            throw Error(fmt::format("base graph: expected i,j,V on line {}", line_no));
        ShiftEntry e{parse_int(line.substr(0, c1), line_no),
                     parse_int(line.substr(c1 + 1, c2 - c1 - 1), line_no),
                     parse_int(line.substr(c2 + 1), line_no)};
        if (e.row < 0 || e.row >= bg.rows || e.col < 0 || e.col >= bg.cols)
            throw Error("base graph: dimension mismatch");
        if (e.shift < 0)
            throw Error(fmt::format("base graph: negative shift on line {}", line_no));
        if (!seen.emplace(e.row, e.col).second)
            throw Error(fmt::format("base graph: duplicate entry ({}, {})", e.row, e.col));
        bg.entries.push_back(e);
    }

    int max_row = -1;
    int max_col = -1;
    for (const auto& e : bg.entries) {
        max_row = std::max(max_row, e.row);
        max_col = std::max(max_col, e.col);
    }
    if (static_cast<int>(bg.entries.size()) != expected_entries(id) || max_row != bg.rows - 1 ||
        max_col != bg.cols - 1)
        throw Error("base graph: dimension mismatch");
    return bg;
}

std::filesystem::path base_graph_path(const std::filesystem::path& data_dir, BaseGraphId id,
                                      int set_index)
{
    return data_dir / "ldpc" /
           fmt::format("bg{}_set{}.csv", id == BaseGraphId::bg1 ? 1 : 2, set_index);
}

BaseGraph load_base_graph(const std::filesystem::path& data_dir, BaseGraphId id, int set_index)
{
    const auto path = base_graph_path(data_dir, id, set_index);
    return load_base_graph(read_file(path), id, set_index, read_checksum_sidecar(path));
}

} // namespace nrpusch::ldpc
