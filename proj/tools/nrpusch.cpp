// SPDX-License-Identifier: Apache-2.0
// Command line front end: link simulation, filter design and a codec self-test.
#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <random>

#include <fmt/format.h>

#include "nrpusch/ldpc/decoder.hpp"
#include "nrpusch/sim/runner.hpp"
#include "nrpusch/waveform/filter.hpp"

using namespace nrpusch;

namespace {

int cmd_simulate(const std::filesystem::path& config, const std::filesystem::path& out,
                 std::optional<std::uint64_t> seed, int workers, bool dump)
{
    auto cfg = sim::load_config(config);
    if (seed)
        cfg.seed = *seed;
    sim::RunOptions opts;
    opts.workers = workers;
    if (dump)
        opts.on_first_trace = [&](double snr, const sim::SlotTrace& trace) {
            auto path = out;
            path.replace_extension();
            path += fmt::format("_estimates_snr{:.2f}.csv", snr);
            std::string s = "rx,tx,re,real,imag\n";
            const auto& est = trace.estimate;
            for (int r = 0; r < est.n_rx; ++r)
                for (int t = 0; t < est.n_tx; ++t) {
                    const auto& p = est.at(r, t);
                    for (Eigen::Index i = 0; i < p.size(); ++i)
                        s += fmt::format("{},{},{},{:.9g},{:.9g}\n", r, t, i, p.data()[i].real(),
                                         p.data()[i].imag());
                }
            sim::write_file_atomic(path, s);
        };
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = sim::run_sweep(cfg, opts);
    sim::emit_report(report, out);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << sim::format_summary(report);
    fmt::print(stderr, "wrote {} ({:.1f} s)\n", out.string(), wall);
    return 0;
}

int cmd_filter(const std::filesystem::path& config, const std::filesystem::path& out)
{
    const auto cfg = sim::load_config(config);
    const int taps = cfg.filter_taps > 0 ? cfg.filter_taps : 153;
    const auto spec = waveform::tx_filter_spec(cfg.numerology, cfg.pusch.n_prb, cfg.bandwidth_hz, taps);
    const auto h = waveform::design_tx_filter(spec);
    std::string t = "index,tap\n";
    for (Eigen::Index i = 0; i < h.size(); ++i)
        t += fmt::format("{},{:.12e}\n", i, h[i]);
    const int n = 1024;
    const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(n, 0.0, spec.sample_rate / 2);
    const Eigen::VectorXd mag = waveform::magnitude_response(h, f, spec.sample_rate);
    std::string r = "freq_hz,magnitude_db\n";
    for (int i = 0; i < n; ++i)
        r += fmt::format("{:.3f},{:.6f}\n", f[i], 20 * std::log10(std::max(mag[i], 1e-15)));
    auto taps_path = out;
    taps_path += "_taps.csv";
    auto resp_path = out;
    resp_path += "_response.csv";
    sim::write_file_atomic(taps_path, t);
    sim::write_file_atomic(resp_path, r);
    fmt::print("{} taps, pass {:.3f} MHz, stop {:.3f} MHz at {:.2f} MHz sampling\nwrote {} and {}\n", taps,
               spec.f_pass / 1e6, spec.f_stop / 1e6, spec.sample_rate / 1e6, taps_path.string(),
               resp_path.string());
    return 0;
}

// Encode random words for both base graphs over a spread of lifting sizes; every codeword must
// satisfy the parity checks and decode back from confident channel LLRs.
int cmd_ldpc_selftest(const std::filesystem::path& data_dir, int words)
{
    std::mt19937_64 rng(2024);
    int failures = 0;
    for (auto bg : {ldpc::BaseGraphId::bg1, ldpc::BaseGraphId::bg2})
        for (int z : {2, 15, 64, 176, 384}) {
            const auto code = ldpc::build_code(ldpc::load_base_graph(data_dir, bg, ldpc::lifting_set_index(z)), z);
            int bad = 0;
            for (int w = 0; w < words; ++w) {
                Bits info(static_cast<std::size_t>(code.k()));
                for (auto& b : info)
                    b = rng() & 1;
                const auto cw = ldpc::encode(code, info);
                std::vector<double> llr(cw.size());
                for (std::size_t i = 0; i < cw.size(); ++i)
                    llr[i] = cw[i] ? -10.0 : 10.0;
                const auto res = ldpc::decode(code, llr, 20, ldpc::BoxplusMode::two_piece);
                if (!code.satisfies_parity(cw) || !res.converged || res.bits != cw)
                    ++bad;
            }
            fmt::print("BG{} Z={:3}  n={:5}  {} / {} ok\n", bg == ldpc::BaseGraphId::bg1 ? 1 : 2, z, code.n(),
                       words - bad, words);
            failures += bad;
        }
    fmt::print("{}\n", failures == 0 ? "PASS" : "FAIL");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"5G NR PUSCH link-level simulator"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "run an SNR sweep and write the CSV report");
    std::filesystem::path config, out;
    std::optional<std::uint64_t> seed;
    int workers = 1;
    bool dump = false;
    simulate->add_option("--config", config, "key = value configuration file")->required()->check(CLI::ExistingFile);
    simulate->add_option("--out", out, "report CSV path")->required();
    simulate->add_option("--seed", seed, "master seed (overrides the config)");
    simulate->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    simulate->add_flag("--dump-estimates", dump, "write the channel estimate of each point's first slot");

    auto* filters = app.add_subcommand("filters", "transmit filter tools");
    filters->require_subcommand(1);
    auto* design = filters->add_subcommand("design", "design the transmit filter of a configuration");
    std::filesystem::path filter_out = "tx_filter";
    design->add_option("--config", config, "key = value configuration file")->required()->check(CLI::ExistingFile);
    design->add_option("--out", filter_out, "output path prefix");

    auto* ldpc_cmd = app.add_subcommand("ldpc", "LDPC codec tools");
    ldpc_cmd->require_subcommand(1);
    auto* selftest = ldpc_cmd->add_subcommand("selftest", "encode/decode round trips over both base graphs");
    int words = 100;
    std::filesystem::path data_dir = default_data_dir();
    selftest->add_option("--words", words, "codewords per lifting size")->check(CLI::PositiveNumber);
    selftest->add_option("--data-dir", data_dir, "asset directory")->check(CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*simulate)
            return cmd_simulate(config, out, seed, workers, dump);
        if (*design)
            return cmd_filter(config, filter_out);
        if (*selftest)
            return cmd_ldpc_selftest(data_dir, words);
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
