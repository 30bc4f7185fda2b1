// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/waveform/iq_export.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

namespace nrpusch::waveform {

namespace {

static_assert(std::endian::native == std::endian::little, "IQ export assumes a little-endian host");

std::filesystem::path antenna_path(const std::filesystem::path& stem, int a)
{
    return stem.parent_path() / fmt::format("{}_ant{}.cf32", stem.filename().string(), a);
}

std::filesystem::path header_path(const std::filesystem::path& stem)
{
    return stem.parent_path() / (stem.filename().string() + ".json");
}

} // namespace

std::vector<std::filesystem::path> export_iq(const TimeSignal& sig, const std::filesystem::path& stem)
{
    std::vector<std::filesystem::path> written;
    std::vector<float> buf(2 * static_cast<std::size_t>(sig.length()));
    for (int a = 0; a < sig.n_antennas(); ++a) {
        for (Eigen::Index i = 0; i < sig.length(); ++i) {
            buf[2 * i] = static_cast<float>(sig.samples(a, i).real());
            buf[2 * i + 1] = static_cast<float>(sig.samples(a, i).imag());
        }
        const auto path = antenna_path(stem, a);
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw Error(fmt::format("export_iq: cannot open {}", path.string()));
        f.write(reinterpret_cast<const char*>(buf.data()),
                static_cast<std::streamsize>(buf.size() * sizeof(float)));
        written.push_back(path);
    }
    nlohmann::json hdr;
    hdr["format"] = "cf32_le";
    hdr["version"] = kIqFormatVersion;
    hdr["sample_rate"] = sig.sample_rate;
    hdr["antennas"] = sig.n_antennas();
    hdr["samples"] = sig.length();
    hdr["group_delay"] = sig.group_delay;
    const auto hp = header_path(stem);
    std::ofstream h(hp);
    if (!h)
        throw Error(fmt::format("export_iq: cannot open {}", hp.string()));
    h << hdr.dump(2) << '\n';
    written.push_back(hp);
    return written;
}

TimeSignal import_iq(const std::filesystem::path& stem)
{
    const auto hdr = nlohmann::json::parse(read_file(header_path(stem)));
    if (hdr.value("format", "") != "cf32_le" || hdr.value("version", 0) != kIqFormatVersion)
        throw Error("import_iq: unsupported header");
    TimeSignal sig;
    sig.sample_rate = hdr.at("sample_rate").get<double>();
    sig.group_delay = hdr.at("group_delay").get<int>();
    const int ants = hdr.at("antennas").get<int>();
    const auto len = hdr.at("samples").get<Eigen::Index>();
    sig.samples.resize(ants, len);
    for (int a = 0; a < ants; ++a) {
        const std::string raw = read_file(antenna_path(stem, a));
        if (raw.size() != 2 * sizeof(float) * static_cast<std::size_t>(len))
            throw Error("import_iq: sample file length mismatch");
        std::vector<float> buf(2 * len);
        std::memcpy(buf.data(), raw.data(), raw.size());
        for (Eigen::Index i = 0; i < len; ++i)
            sig.samples(a, i) = cf64(buf[2 * i], buf[2 * i + 1]);
    }
    return sig;
}

} // namespace nrpusch::waveform
