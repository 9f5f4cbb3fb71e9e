#ifndef NICENSUS_TOOLS_MANIFEST_HPP
#define NICENSUS_TOOLS_MANIFEST_HPP

#include "nicensus/io.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace nicensus {

/// Hex SHA-256 of a string.
std::string sha256_hex(const std::string& data);

/// Ties a run to its inputs: parameters exclude the worker count, and the
/// digest covers the subcommand, parameters and result, so identical
/// invocations produce identical manifests.
struct RunManifest {
    std::string subcommand;
    Json parameters;
    std::optional<std::uint64_t> seed;
    std::string version;
    std::string statement;

    Json to_json(const Json& result) const;
};

} // namespace nicensus

#endif
