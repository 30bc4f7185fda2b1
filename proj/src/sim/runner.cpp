// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/sim/runner.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include <fmt/format.h>

#include "nrpusch/random.hpp"

namespace nrpusch::sim {

namespace {

double ratio(long num, long den) { return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }

} // namespace

double PointReport::bler() const noexcept { return ratio(totals.block_errors, totals.blocks); }
double PointReport::ber_pre() const noexcept { return ratio(totals.coded_bit_errors, totals.coded_bits); }
double PointReport::ber_post() const noexcept { return ratio(totals.info_bit_errors, totals.info_bits); }
double PointReport::evm_pct() const noexcept { return trials > 0 ? totals.evm_pct / trials : 0.0; }
double PointReport::mean_iterations() const noexcept { return ratio(totals.iterations, totals.decoded_blocks); }
double PointReport::elapsed_s(const SimConfig& cfg) const noexcept
{
    return static_cast<double>(trials) * cfg.numerology.slot_duration();
}

PointReport run_point(const LinkSimulator& link, double snr_db, int point_index, const RunOptions& opts)
{
    const auto& cfg = link.config();
    const int cap = cfg.trials;
    const int max_err = cfg.max_block_errors;

    std::vector<std::optional<SlotResult>> results(static_cast<std::size_t>(cap));
    std::atomic<int> next{0};
    std::atomic<int> stop_at{cap};  // trials [0, stop_at) count
    std::mutex m;
    int prefix = 0;     // results[0, prefix) are present
    long prefix_err = 0;
    std::exception_ptr failure;

    auto worker = [&] {
        try {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= stop_at.load())
                    return;
                SlotTrace trace;
                const auto seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(point_index),
                                                         static_cast<std::uint64_t>(t)});
                const bool want_trace = t == 0 && opts.on_first_trace;
                SlotResult r = link.run_slot(snr_db, seed, want_trace ? &trace : nullptr);
                std::lock_guard lock(m);
                if (want_trace)
                    opts.on_first_trace(snr_db, trace);
                results[static_cast<std::size_t>(t)] = r;
                while (prefix < stop_at.load() && results[static_cast<std::size_t>(prefix)]) {
                    prefix_err += results[static_cast<std::size_t>(prefix)]->block_errors;
                    ++prefix;
                    if (max_err > 0 && prefix_err >= max_err) {
                        stop_at.store(prefix);
                        break;
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(m);
            if (!failure)
                failure = std::current_exception();
            stop_at.store(0);
        }
    };

    const int n_threads = std::max(1, std::min(opts.workers, cap));
    std::vector<std::jthread> pool;
    for (int i = 1; i < n_threads; ++i)
        pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);

    PointReport out;
    out.snr_db = snr_db;
    out.trials = stop_at.load();
    for (int t = 0; t < out.trials; ++t)
        out.totals += *results[static_cast<std::size_t>(t)];
    return out;
}

SimReport run_sweep(const SimConfig& cfg, const RunOptions& opts)
{
    const LinkSimulator link(cfg);
    SimReport rep;
    rep.config = cfg;
    rep.code = fmt::format("BG{} Z={} C={}", link.base_graph() == ldpc::BaseGraphId::bg1 ? 1 : 2,
                           link.lifting(), link.code_blocks());
    rep.asset_checksums = link.asset_checksums();
    const auto snrs = cfg.snr_points();
    for (std::size_t i = 0; i < snrs.size(); ++i)
        rep.points.push_back(run_point(link, snrs[i], static_cast<int>(i), opts));
    return rep;
}

std::string format_csv(const SimReport& report)
{
    std::string s = kCsvHeader;
    s += '\n';
    for (const auto& p : report.points)
        s += fmt::format("{:.2f},{},{},{:.6e},{:.6e},{:.6e},{:.4f},{:.4f},{:.4f}\n", p.snr_db, p.blocks(),
                         p.block_errors(), p.bler(), p.ber_pre(), p.ber_post(), p.evm_pct(),
                         p.mean_iterations(), p.elapsed_s(report.config));
    return s;
}

std::string format_summary(const SimReport& report)
{
    const auto& c = report.config;
    const auto& mcs = lookup_mcs(c.pusch.mcs_index);
    std::string s;
    s += fmt::format("MCS {} ({}, rate {:.3f}, TBS {}), {}\n", mcs.index, waveform::modulation_name(mcs.modulation),
                     mcs.code_rate, mcs.tbs, report.code);
    s += fmt::format("channel {}{}, {} estimation, decoder cap {} iterations\n", c.channel,
                     c.fading() ? fmt::format(" at {} Hz Doppler", c.doppler_hz) : "",
                     c.genie ? "genie" : (c.estimator == receiver::EstimatorKind::mmse ? "MMSE" : "LS"),
                     c.decoder_iterations);
    for (const auto& [name, sum] : report.asset_checksums)
        s += fmt::format("asset {} sha256 {}\n", name, sum);
    s += "\n";
    s += fmt::format("{:>8} {:>8} {:>8} {:>10} {:>10} {:>10} {:>8} {:>6}\n", "snr_db", "trials", "blocks", "bler",
                     "ber_pre", "ber_post", "evm_pct", "iters");
    for (const auto& p : report.points)
        s += fmt::format("{:8.2f} {:8} {:8} {:10.3e} {:10.3e} {:10.3e} {:8.3f} {:6.2f}\n", p.snr_db, p.trials,
                         p.blocks(), p.bler(), p.ber_pre(), p.ber_post(), p.evm_pct(), p.mean_iterations());
    s += "\nconfiguration:\n" + to_text(c);
    return s;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw Error(fmt::format("cannot write {}", tmp.string()));
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f.flush())
            throw Error(fmt::format("write failed for {}", tmp.string()));
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error(fmt::format("cannot rename {} to {}: {}", tmp.string(), path.string(), ec.message()));
    }
}

void emit_report(const SimReport& report, const std::filesystem::path& path)
{
    write_file_atomic(path, format_csv(report));
    auto summary = path;
    summary += ".summary.txt";
    write_file_atomic(summary, format_summary(report));
}

} // namespace nrpusch::sim
