// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/sim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "nrpusch/sim/mcs.hpp"

namespace nrpusch::sim {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view v)
{
    T out{};
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || p != end)
        throw Error(fmt::format("config: bad value '{}' for {}", v, key));
    return out;
}

bool parse_bool(std::string_view key, std::string_view v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw Error(fmt::format("config: bad boolean '{}' for {}", v, key));
}

std::vector<int> parse_int_list(std::string_view key, std::string_view v)
{
    std::vector<int> out;
    while (!v.empty()) {
        const auto c = v.find(',');
        out.push_back(parse_number<int>(key, trim(v.substr(0, c))));
        if (c == std::string_view::npos)
            break;
        v.remove_prefix(c + 1);
    }
    return out;
}

using Setter = std::function<void(SimConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> m{
        {"mu", [](auto& c, auto k, auto v) { c.numerology.mu = parse_number<int>(k, v); }},
        {"n_fft", [](auto& c, auto k, auto v) { c.numerology.n_fft = parse_number<int>(k, v); }},
        {"n_prb", [](auto& c, auto k, auto v) { c.pusch.n_prb = parse_number<int>(k, v); }},
        {"first_prb", [](auto& c, auto k, auto v) { c.pusch.first_prb = parse_number<int>(k, v); }},
        {"n_layers", [](auto& c, auto k, auto v) { c.pusch.n_layers = parse_number<int>(k, v); }},
        {"n_rx", [](auto& c, auto k, auto v) { c.n_rx = parse_number<int>(k, v); }},
        {"mcs", [](auto& c, auto k, auto v) { c.pusch.mcs_index = parse_number<int>(k, v); }},
        {"n_symbols", [](auto& c, auto k, auto v) { c.pusch.n_symbols = parse_number<int>(k, v); }},
        {"dmrs_symbols", [](auto& c, auto k, auto v) { c.pusch.dmrs_symbols = parse_int_list(k, v); }},
        {"dmrs_spacing", [](auto& c, auto k, auto v) { c.pusch.dmrs_spacing = parse_number<int>(k, v); }},
        {"scrambling_seed",
         [](auto& c, auto k, auto v) { c.pusch.scrambling_seed = parse_number<std::uint32_t>(k, v); }},
        {"slot_number", [](auto& c, auto k, auto v) { c.pusch.slot_number = parse_number<int>(k, v); }},
        {"bandwidth_hz", [](auto& c, auto k, auto v) { c.bandwidth_hz = parse_number<double>(k, v); }},
        {"filter_taps", [](auto& c, auto k, auto v) { c.filter_taps = parse_number<int>(k, v); }},
        {"channel", [](auto& c, auto, auto v) { c.channel = std::string(v); }},
        {"doppler_hz", [](auto& c, auto k, auto v) { c.doppler_hz = parse_number<double>(k, v); }},
        {"cfo_hz", [](auto& c, auto k, auto v) { c.cfo_hz = parse_number<double>(k, v); }},
        {"sto_samples", [](auto& c, auto k, auto v) { c.sto_samples = parse_number<int>(k, v); }},
        {"snr_start_db", [](auto& c, auto k, auto v) { c.snr_start_db = parse_number<double>(k, v); }},
        {"snr_stop_db", [](auto& c, auto k, auto v) { c.snr_stop_db = parse_number<double>(k, v); }},
        {"snr_step_db", [](auto& c, auto k, auto v) { c.snr_step_db = parse_number<double>(k, v); }},
        {"trials", [](auto& c, auto k, auto v) { c.trials = parse_number<int>(k, v); }},
        {"max_block_errors", [](auto& c, auto k, auto v) { c.max_block_errors = parse_number<int>(k, v); }},
        {"seed", [](auto& c, auto k, auto v) { c.seed = parse_number<std::uint64_t>(k, v); }},
        {"decoder_iterations",
         [](auto& c, auto k, auto v) { c.decoder_iterations = parse_number<int>(k, v); }},
        {"boxplus",
         [](auto& c, auto k, auto v) {
             if (v == "exact")
                 c.boxplus = ldpc::BoxplusMode::exact;
             else if (v == "two_piece")
                 c.boxplus = ldpc::BoxplusMode::two_piece;
             else
                 throw Error(fmt::format("config: bad value '{}' for {}", v, k));
         }},
        {"estimator",
         [](auto& c, auto k, auto v) {
             if (v == "ls")
                 c.estimator = receiver::EstimatorKind::ls;
             else if (v == "mmse")
                 c.estimator = receiver::EstimatorKind::mmse;
             else
                 throw Error(fmt::format("config: bad value '{}' for {}", v, k));
         }},
        {"genie", [](auto& c, auto k, auto v) { c.genie = parse_bool(k, v); }},
        {"data_dir", [](auto& c, auto, auto v) { c.data_dir = std::string(v); }},
    };
    return m;
}

} // namespace

std::vector<double> SimConfig::snr_points() const
{
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((snr_stop_db - snr_start_db) / snr_step_db + 1e-9)) + 1;
    for (int i = 0; i < n; ++i)
        out.push_back(snr_start_db + i * snr_step_db);
    return out;
}

std::filesystem::path SimConfig::resolved_data_dir() const
{
    return data_dir.empty() ? default_data_dir() : data_dir;
}

void SimConfig::validate() const
{
    numerology.validate();
    pusch.validate(numerology);
    lookup_mcs(pusch.mcs_index);
    if (n_rx < pusch.n_layers || n_rx > 4)
        throw Error("config: n_rx must be in [n_layers, 4]");
    if (!(snr_step_db > 0))
        throw Error("config: snr_step_db must be positive");
    if (snr_stop_db < snr_start_db)
        throw Error("config: snr_stop_db below snr_start_db");
    if (trials < 1)
        throw Error("config: trials must be at least 1");
    if (max_block_errors < 0)
        throw Error("config: max_block_errors must be non-negative");
    if (decoder_iterations < 1)
        throw Error("config: decoder_iterations must be at least 1");
    if (filter_taps < 0 || (filter_taps > 0 && filter_taps % 2 == 0))
        throw Error("config: filter_taps must be 0 or odd");
    if (doppler_hz < 0)
        throw Error("config: doppler_hz must be non-negative");
    if (!fading() && doppler_hz != 0)
        throw Error("config: doppler_hz needs a fading channel");
    if (std::abs(cfo_hz) >= numerology.delta_f() / 2)
        throw Error("config: |cfo_hz| must stay below half the subcarrier spacing");
    if (std::abs(sto_samples) >= numerology.cp_short() / 2)
        throw Error("config: |sto_samples| must stay below the window advance");
}

SimConfig parse_config(std::string_view text)
{
    SimConfig c;
    int line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto h = line.find('#'); h != std::string_view::npos)
            line = line.substr(0, h);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(fmt::format("config line {}: expected key = value", line_no));
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw Error(fmt::format("config line {}: unknown key '{}'", line_no, key));
        it->second(c, key, value);
    }
    c.validate();
    return c;
}

SimConfig load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

std::string to_text(const SimConfig& c)
{
    std::string s;
    auto put = [&](std::string_view k, const auto& v) { s += fmt::format("{} = {}\n", k, v); };
    put("mu", c.numerology.mu);
    put("n_fft", c.numerology.n_fft);
    put("n_prb", c.pusch.n_prb);
    put("first_prb", c.pusch.first_prb);
    put("n_layers", c.pusch.n_layers);
    put("n_rx", c.n_rx);
    put("mcs", c.pusch.mcs_index);
    put("n_symbols", c.pusch.n_symbols);
    put("dmrs_symbols", fmt::format("{}", fmt::join(c.pusch.dmrs_symbols, ",")));
    put("dmrs_spacing", c.pusch.dmrs_spacing);
    put("scrambling_seed", c.pusch.scrambling_seed);
    put("slot_number", c.pusch.slot_number);
    put("bandwidth_hz", c.bandwidth_hz);
    put("filter_taps", c.filter_taps);
    put("channel", c.channel);
    put("doppler_hz", c.doppler_hz);
    put("cfo_hz", c.cfo_hz);
    put("sto_samples", c.sto_samples);
    put("snr_start_db", c.snr_start_db);
    put("snr_stop_db", c.snr_stop_db);
    put("snr_step_db", c.snr_step_db);
    put("trials", c.trials);
    put("max_block_errors", c.max_block_errors);
    put("seed", c.seed);
    put("decoder_iterations", c.decoder_iterations);
    put("boxplus", c.boxplus == ldpc::BoxplusMode::exact ? "exact" : "two_piece");
    put("estimator", c.estimator == receiver::EstimatorKind::ls ? "ls" : "mmse");
    put("genie", c.genie ? "true" : "false");
    if (!c.data_dir.empty())
        put("data_dir", c.data_dir.string());
    return s;
}

} // namespace nrpusch::sim
