#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qbill::io {

// Little-endian encoders used by every on-disk format (QBS1, QBD1, QBN1).
class ByteWriter {
public:
    void magic(std::string_view tag);
    void u8(std::uint8_t v);
    void i8(std::int8_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void f32(float v);
    void f64(double v);

    const std::vector<std::uint8_t>& bytes() const { return buf_; }
    std::vector<std::uint8_t>& bytes() { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

class ByteReader {
public:
    ByteReader(std::span<const std::uint8_t> data, std::string what);

    void expect_magic(std::string_view tag);
    std::uint8_t u8();
    std::int8_t i8();
    std::uint32_t u32();
    std::uint64_t u64();
    float f32();
    double f64();

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }
    bool at_end() const { return pos_ == data_.size(); }

private:
    std::span<const std::uint8_t> take(std::size_t n);

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
    std::string what_;
};

std::vector<std::uint8_t> read_file(const std::string& path);

/// CRC-32 (zlib polynomial) of a byte range.
std::uint32_t crc32(std::span<const std::uint8_t> data);

}  // namespace qbill::io
