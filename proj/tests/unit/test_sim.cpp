// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nrpusch/sim/runner.hpp"

using namespace nrpusch;
using namespace nrpusch::sim;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("mcs table")
{
    const auto& m0 = lookup_mcs(0);
    CHECK(m0.modulation == waveform::Modulation::qpsk);
    CHECK(m0.code_rate == 0.117);
    CHECK(m0.tbs == 7176);
    const auto& m15 = lookup_mcs(15);
    CHECK(m15.modulation == waveform::Modulation::qam16);
    CHECK(m15.code_rate == 0.602);
    CHECK(m15.tbs == 73776);
    const auto& m20 = lookup_mcs(20);
    CHECK(m20.modulation == waveform::Modulation::qam64);
    CHECK(m20.code_rate == 0.554);
    CHECK(m20.tbs == 102416);
    CHECK_THROWS_AS(lookup_mcs(7), Error);
    CHECK(mcs_table().size() == 5);

    // the table TBS fits the default allocation at roughly the listed rate
    const waveform::PuschConfig cfg;
    for (const auto& e : mcs_table()) {
        const double g = waveform::bits_per_symbol(e.modulation) * cfg.n_layers * cfg.data_res_per_layer();
        CHECK(std::abs(e.tbs / g - e.code_rate) < 0.01);
    }
}

TEST_CASE("config parsing")
{
    SUBCASE("defaults describe the reference setup")
    {
        const auto c = parse_config("");
        CHECK(c.numerology.n_fft == 2048);
        CHECK(c.numerology.delta_f() == 30e3);
        CHECK(c.pusch.n_prb == 106);
        CHECK(c.pusch.dmrs_symbols.size() == 2);
        CHECK(c.pusch.dmrs_spacing == 2);
        CHECK(c.filter_taps == 153);
        CHECK(c.estimator == receiver::EstimatorKind::mmse);
        CHECK(c.decoder_iterations == 20);
    }
    SUBCASE("values, comments and lists")
    {
        const auto c = parse_config("# sweep\nmcs = 10\n  channel=TDLA30 # fading\ndoppler_hz = 300\n"
                                    "dmrs_symbols = 3, 12\nsnr_start_db=-2.5\nsnr_stop_db = 1\nsnr_step_db = 0.5\n"
                                    "genie = true\nestimator = ls\nboxplus = exact\nseed = 18446744073709551615\n");
        CHECK(c.pusch.mcs_index == 10);
        CHECK(c.channel == "TDLA30");
        CHECK(c.fading());
        CHECK(c.pusch.dmrs_symbols == std::vector<int>{3, 12});
        CHECK(c.snr_points() == std::vector<double>{-2.5, -2, -1.5, -1, -0.5, 0, 0.5, 1});
        CHECK(c.genie);
        CHECK(c.estimator == receiver::EstimatorKind::ls);
        CHECK(c.boxplus == ldpc::BoxplusMode::exact);
        CHECK(c.seed == 18446744073709551615ULL);
        CHECK(to_text(parse_config(to_text(c))) == to_text(c));
    }
    SUBCASE("errors")
    {
        CHECK_THROWS_WITH_AS(parse_config("snr_db = 3\n"), doctest::Contains("unknown key"), Error);
        CHECK_THROWS_AS(parse_config("mcs\n"), Error);
        CHECK_THROWS_AS(parse_config("mcs = 3\n"), Error);
        CHECK_THROWS_AS(parse_config("trials = 0\n"), Error);
        CHECK_THROWS_AS(parse_config("trials = 1x\n"), Error);
        CHECK_THROWS_AS(parse_config("snr_step_db = 0\n"), Error);
        CHECK_THROWS_AS(parse_config("doppler_hz = 10\n"), Error);
        CHECK_THROWS_AS(parse_config("cfo_hz = 20000\n"), Error);
        CHECK_THROWS_AS(parse_config("genie = maybe\n"), Error);
        CHECK_THROWS_AS(parse_config("n_rx = 1\n"), Error);
        CHECK_THROWS_AS(parse_config("filter_taps = 152\n"), Error);
    }
    SUBCASE("unknown channel profile fails at setup")
    {
        CHECK_THROWS_AS(LinkSimulator(parse_config("channel = TDLX9\n")), Error);
    }
}

TEST_CASE("noiseless limit: mcs 0 at 40 dB decodes every block")
{
    auto c = parse_config("mcs = 0\nsnr_start_db = 40\nsnr_stop_db = 40\ntrials = 200\n");
    const auto rep = run_sweep(c);
    REQUIRE(rep.points.size() == 1);
    const auto& p = rep.points[0];
    CHECK(p.trials == 200);
    CHECK(p.blocks() == 400);
    CHECK(p.block_errors() == 0);
    CHECK(p.ber_post() == 0.0);
    CHECK(p.ber_pre() == 0.0);
    CHECK(p.mean_iterations() == doctest::Approx(1.0));
    CHECK(p.elapsed_s(c) == doctest::Approx(0.1));
}

TEST_CASE("sweep determinism and early stop")
{
    const auto c = parse_config("mcs = 0\nsnr_start_db = -5\nsnr_stop_db = -3\nsnr_step_db = 1\n"
                                "trials = 30\nmax_block_errors = 10\nfilter_taps = 0\n");
    RunOptions one;
    RunOptions three;
    three.workers = 3;
    const auto a = run_sweep(c, one);
    const auto b = run_sweep(c, three);
    CHECK(format_csv(a) == format_csv(b));

    // early stop happens at the first trial whose running error count reaches the limit
    const auto& low = a.points[0];
    CHECK(low.block_errors() >= 10);
    CHECK(low.block_errors() - 2 < 10);
    CHECK(low.trials < 30);
    // the same seeds without the early stop agree on the prefix
    auto full = c;
    full.max_block_errors = 0;
    full.trials = static_cast<int>(low.trials);
    const LinkSimulator link(full);
    const auto p = run_point(link, -5.0, 0);
    CHECK(p.block_errors() == low.block_errors());
    CHECK(p.totals.coded_bit_errors == low.totals.coded_bit_errors);

    // metric consistency
    for (const auto& q : a.points) {
        CHECK(q.bler() == doctest::Approx(double(q.block_errors()) / q.blocks()));
        if (q.bler() == 1.0)
            CHECK(q.ber_post() > 0);
    }
}

TEST_CASE("genie receiver on fading with impairments")
{
    // genie timing, frequency and channel: the slot decodes at an SNR where estimation is the bottleneck
    const auto base = "mcs = 10\nchannel = TDLA30\ndoppler_hz = 300\ncfo_hz = 150\nsto_samples = 5\n"
                      "snr_start_db = 30\nsnr_stop_db = 30\ntrials = 4\n";
    auto g = parse_config(std::string(base) + "genie = true\n");
    auto e = parse_config(base);
    const auto rg = run_sweep(g).points[0];
    const auto re = run_sweep(e).points[0];
    MESSAGE("genie evm " << rg.evm_pct() << "%, estimated " << re.evm_pct() << "%");
    CHECK(rg.block_errors() == 0);
    CHECK(re.block_errors() == 0);
    CHECK(rg.evm_pct() < 6.0);
    CHECK(rg.ber_pre() <= re.ber_pre());
}

TEST_CASE("report emission")
{
    const auto dir = std::filesystem::temp_directory_path() / "nrpusch_report_test";
    std::filesystem::create_directories(dir);
    SimReport empty;
    emit_report(empty, dir / "empty.csv");
    CHECK(slurp(dir / "empty.csv") == std::string(kCsvHeader) + "\n");

    SimReport r;
    for (int i = 0; i < 5; ++i) {
        PointReport p;
        p.snr_db = i;
        p.trials = 10;
        p.totals.blocks = 20;
        p.totals.block_errors = 5 - i;
        p.totals.coded_bits = 1000;
        p.totals.coded_bit_errors = 100 - 10 * i;
        p.totals.info_bits = 500;
        p.totals.decoded_blocks = 20;
        p.totals.iterations = 100;
        r.points.push_back(p);
    }
    emit_report(r, dir / "r.csv");
    const auto first = slurp(dir / "r.csv");
    CHECK(count_lines(first) == 6);
    std::istringstream lines(first);
    std::string line;
    while (std::getline(lines, line))
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
    emit_report(r, dir / "r.csv");
    CHECK(slurp(dir / "r.csv") == first);
    CHECK(std::filesystem::exists(dir / "r.csv.summary.txt"));
    CHECK_FALSE(std::filesystem::exists(dir / "r.csv.tmp"));
    CHECK_THROWS_AS(emit_report(r, dir / "missing" / "x.csv"), Error);
    std::filesystem::remove_all(dir);
}
