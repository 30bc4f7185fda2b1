// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/channel/tdl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace nrpusch::channel {

std::vector<int> TdlProfile::delay_samples(double sample_rate) const
{
    std::vector<int> d;
    for (const auto& t : taps)
        d.push_back(static_cast<int>(std::lround(t.delay_s * sample_rate)));
    return d;
}

TdlProfile parse_tdl_profile(std::string_view text)
{
    TdlProfile p;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            auto name = line.substr(1);
            name.erase(0, name.find_first_not_of(' '));
            if (p.name.empty())
                p.name = name;
            continue;
        }
        if (!header) {
            if (line != "delay_ns,power_db")
                throw Error("tdl profile: expected header delay_ns,power_db");
            header = true;
            continue;
        }
        double delay_ns = 0;
        double power_db = 0;
        char comma = 0;
        std::istringstream ls(line);
        if (!(ls >> delay_ns >> comma >> power_db) || comma != ',' || !(ls >> std::ws).eof())
            throw Error(fmt::format("tdl profile: malformed line {}", line_no));
        if (delay_ns < 0 || !std::isfinite(power_db))
            throw Error(fmt::format("tdl profile: invalid tap on line {}", line_no));
        p.taps.push_back({delay_ns * 1e-9, std::pow(10.0, power_db / 10.0)});
    }
    if (p.taps.empty())
        throw Error("tdl profile: no taps");
    std::stable_sort(p.taps.begin(), p.taps.end(),
                     [](const TdlTap& a, const TdlTap& b) { return a.delay_s < b.delay_s; });
    double total = 0;
    for (const auto& t : p.taps)
        total += t.power;
    for (auto& t : p.taps)
        t.power /= total;
    return p;
}

TdlProfile load_tdl_profile(const std::filesystem::path& path)
{
    const std::string text = read_file(path);
    if (sha256_hex(text) != read_checksum_sidecar(path))
        throw Error(fmt::format("tdl profile: checksum mismatch for {}", path.string()));
    return parse_tdl_profile(text);
}

TdlProfile load_tdl_profile(const std::filesystem::path& data_dir, std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return load_tdl_profile(data_dir / "tdl" / (lower + ".csv"));
}

} // namespace nrpusch::channel
