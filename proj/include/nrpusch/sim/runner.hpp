// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nrpusch/sim/link.hpp"

namespace nrpusch::sim {

struct PointReport {
    double snr_db = 0.0;
    long trials = 0;
    SlotResult totals;

    long blocks() const noexcept { return totals.blocks; }
    long block_errors() const noexcept { return totals.block_errors; }
    double bler() const noexcept;
    double ber_pre() const noexcept;
    double ber_post() const noexcept;
    double evm_pct() const noexcept;
    double mean_iterations() const noexcept;
    double elapsed_s(const SimConfig& cfg) const noexcept;  ///< simulated air time
};

struct SimReport {
    SimConfig config;
    std::string code;  ///< base graph and lifting in use
    std::map<std::string, std::string> asset_checksums;
    std::vector<PointReport> points;
};

struct RunOptions {
    int workers = 1;
    /// Called once per point with trial 0's internals (diagnostics only).
    std::function<void(double snr_db, const SlotTrace&)> on_first_trace;
};

/// Trial t of point p uses seed derive_seed(master, {p, t}). Trials run on `workers` threads; the
/// early stop is resolved in trial order, so the result does not depend on the thread count.
PointReport run_point(const LinkSimulator& link, double snr_db, int point_index, const RunOptions& opts = {});
SimReport run_sweep(const SimConfig& cfg, const RunOptions& opts = {});

inline constexpr const char* kCsvHeader =
    "snr_db,blocks,block_errors,bler,ber_pre,ber_post,evm_pct,mean_iters,elapsed_s";

std::string format_csv(const SimReport& report);
std::string format_summary(const SimReport& report);

/// Writes `path` and `path`.summary.txt, each through a temporary file and a rename.
void emit_report(const SimReport& report, const std::filesystem::path& path);

/// Atomic overwrite: write to a sibling temporary, then rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace nrpusch::sim
