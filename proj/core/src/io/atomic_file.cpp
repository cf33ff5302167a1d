#include "qbill/io/atomic_file.hpp"

#include <filesystem>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "qbill/error.hpp"

namespace qbill::io {

void write_atomic(const std::string& path, std::span<const std::uint8_t> data) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(reinterpret_cast<const char*>(data.data()),
                  static_cast<std::streamsize>(data.size()));
        if (!out) {
            throw Error("short write to '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("cannot rename into '" + path + "': " + ec.message());
    }
}

void write_atomic(const std::string& path, std::string_view text) {
    write_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace qbill::io
