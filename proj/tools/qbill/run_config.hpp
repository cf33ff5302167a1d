#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace qbill::cli {

/// Exit code 2 path: bad flags, bad config keys, values out of range.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ConfigMap = std::map<std::string, std::string>;

/// Parses key=value lines; '#' starts a comment, blank lines are skipped.
ConfigMap parse_config_text(const std::string& text, const std::string& origin);
ConfigMap load_config_file(const std::string& path);

/// Fills options of `cmd` that were not given on the command line from
/// `values`. Keys name long options without the dashes. Unknown keys raise
/// UsageError. `lowest` entries (presets) only apply when neither the
/// command line nor `values` set the key.
void apply_config(CLI::App& cmd, const ConfigMap& values, const ConfigMap& lowest = {});

/// Every long option of `cmd` with its effective value (excluding --config).
ConfigMap resolved_config(const CLI::App& cmd);

std::string hex32(std::uint32_t v);
std::string config_digest(const ConfigMap& cfg);

/// Writes `<artifact>.meta.json` recording the command, resolved config and
/// its digest, the artifact's CRC-32 and the CRC-32 of each named input.
void write_sidecar(const std::string& artifact, const std::string& command, const ConfigMap& cfg,
                   const std::map<std::string, std::string>& inputs = {});

/// CRC-32 of a file's bytes as 8 hex digits.
std::string file_digest(const std::string& path);

/// When `<artifact>.meta.json` exists, checks that it describes the file on
/// disk; throws FormatError on a digest mismatch. Returns the parsed
/// "inputs" and "config" objects (empty maps without a sidecar).
struct SidecarInfo {
    bool present = false;
    ConfigMap config;
    std::map<std::string, std::string> inputs;
};
SidecarInfo verify_sidecar(const std::string& artifact);

/// Logs the resolved configuration to stderr, one key=value per line.
void log_config(const std::string& command, const ConfigMap& cfg);

}  // namespace qbill::cli
