// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace nrpusch::ldpc {

enum class BaseGraphId { bg1, bg2, custom };

struct ShiftEntry {
    int row;
    int col;
    int shift;
};

/// One shift-set column of a QC-LDPC base graph.
struct BaseGraph {
    BaseGraphId id = BaseGraphId::custom;
    int set_index = 0;
    int rows = 0;
    int cols = 0;
    std::vector<ShiftEntry> entries;
};

/// Block dimensions of the standard graphs (46x68 and 42x52).
int base_graph_rows(BaseGraphId id);
int base_graph_cols(BaseGraphId id);

/// Number of information block-columns (22 for BG1, 10 for BG2).
int base_graph_info_cols(BaseGraphId id);

/// All lifting sizes of the standard set, ascending.
std::span<const int> lifting_sizes();

/// Shift-set index (0..7) containing `z`, or -1 when `z` is not a standard lifting size.
int lifting_set_index(int z);

/// Parses and validates an `i,j,V` asset against `expected_sha256`.
BaseGraph load_base_graph(std::string_view asset, BaseGraphId id, int set_index,
                          std::string_view expected_sha256);

/// Loads `bg{1,2}_set{k}.csv` and its sidecar from `data_dir/ldpc`.
BaseGraph load_base_graph(const std::filesystem::path& data_dir, BaseGraphId id, int set_index);

std::filesystem::path base_graph_path(const std::filesystem::path& data_dir, BaseGraphId id,
                                      int set_index);

} // namespace nrpusch::ldpc
