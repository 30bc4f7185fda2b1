// SPDX-License-Identifier: Apache-2.0
#include "nrpusch/common.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace nrpusch {

std::filesystem::path default_data_dir()
{
    if (const char* env = std::getenv("NRPUSCH_DATA_DIR"))
        return env;
    return NRPUSCH_DATA_DIR;
}

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string read_checksum_sidecar(const std::filesystem::path& path)
{
    std::istringstream in(read_file(path.string() + ".sha256"));
    std::string token;
    in >> token;
    return token;
}

} // namespace nrpusch
