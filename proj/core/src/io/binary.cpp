#include "qbill/io/binary.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iterator>

#include <zlib.h>

#include "qbill/error.hpp"

namespace qbill::io {

namespace {

template <typename U>
void put_le(std::vector<std::uint8_t>& buf, U v) {
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

template <typename U>
U get_le(std::span<const std::uint8_t> b) {
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        v |= static_cast<U>(b[i]) << (8 * i);
    }
    return v;
}

}  // namespace

void ByteWriter::magic(std::string_view tag) {
    buf_.insert(buf_.end(), tag.begin(), tag.end());
}

void ByteWriter::u8(std::uint8_t v) { buf_.push_back(v); }
void ByteWriter::i8(std::int8_t v) { buf_.push_back(static_cast<std::uint8_t>(v)); }
void ByteWriter::u32(std::uint32_t v) { put_le(buf_, v); }
void ByteWriter::u64(std::uint64_t v) { put_le(buf_, v); }
void ByteWriter::f32(float v) { put_le(buf_, std::bit_cast<std::uint32_t>(v)); }
void ByteWriter::f64(double v) { put_le(buf_, std::bit_cast<std::uint64_t>(v)); }

ByteReader::ByteReader(std::span<const std::uint8_t> data, std::string what)
    : data_(data), what_(std::move(what)) {}

std::span<const std::uint8_t> ByteReader::take(std::size_t n) {
    if (remaining() < n) {
        throw FormatError(what_ + ": truncated at byte " + std::to_string(pos_));
    }
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
}

void ByteReader::expect_magic(std::string_view tag) {
    auto s = take(tag.size());
    if (!std::equal(tag.begin(), tag.end(), s.begin())) {
        throw FormatError(what_ + ": bad magic, expected '" + std::string(tag) + "'");
    }
}

std::uint8_t ByteReader::u8() { return take(1)[0]; }
std::int8_t ByteReader::i8() { return static_cast<std::int8_t>(take(1)[0]); }
std::uint32_t ByteReader::u32() { return get_le<std::uint32_t>(take(4)); }
std::uint64_t ByteReader::u64() { return get_le<std::uint64_t>(take(8)); }
float ByteReader::f32() { return std::bit_cast<float>(get_le<std::uint32_t>(take(4))); }
double ByteReader::f64() { return std::bit_cast<double>(get_le<std::uint64_t>(take(8))); }

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in chunks for large payloads.
    constexpr std::size_t chunk = 1u << 30;
    for (std::size_t off = 0; off < data.size(); off += chunk) {
        const auto n = std::min(chunk, data.size() - off);
        crc = ::crc32(crc, data.data() + off, static_cast<uInt>(n));
    }
    return static_cast<std::uint32_t>(crc);
}

}  // namespace qbill::io
