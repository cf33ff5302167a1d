#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qbill/convnet/network.hpp"

namespace qbill::convnet {

// QBN1 model file, little-endian:
//   "QBN1" | version u32 | R u32 | layer count u32
//   | per layer {kind u8 | dims u32[4] | weights f32[...] | biases f32[...]}
//   | crc32 u32 of every byte between the magic and the checksum
// Conv weights are stored [filter][channel][ky][kx]; dense weights [out][in].
inline constexpr std::uint32_t kModelVersion = 1;

std::vector<std::uint8_t> encode_model(const Parameters<float>& p);
Parameters<float> decode_model(std::span<const std::uint8_t> bytes);
void save_model(const Parameters<float>& p, const std::string& path);
Parameters<float> load_model(const std::string& path);

/// Throws ShapeError unless the model accepts R x R inputs.
void require_input(const Parameters<float>& p, int resolution);

}  // namespace qbill::convnet
