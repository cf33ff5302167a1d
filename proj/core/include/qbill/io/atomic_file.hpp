#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace qbill::io {

/// Writes `data` to `path` via a sibling temporary file and a rename, so a
/// reader never observes a partially written artifact.
void write_atomic(const std::string& path, std::span<const std::uint8_t> data);
void write_atomic(const std::string& path, std::string_view text);

}  // namespace qbill::io
