#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <memory>
#include <stdexcept>

namespace nicensus {

std::string sha256_hex(const std::string& data)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

Json RunManifest::to_json(const Json& result) const
{
    const Json covered{{"subcommand", subcommand}, {"parameters", parameters}, {"result", result}};
    Json m{{"subcommand", subcommand}, {"parameters", parameters}};
    m["seed"] = seed ? Json(*seed) : Json(nullptr);
    m["version"] = version;
    m["statement"] = statement;
    m["digest"] = sha256_hex(covered.dump());
    return m;
}

} // namespace nicensus
