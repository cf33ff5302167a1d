#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbill/imaging/pixel_grid.hpp"

namespace qbill::imaging {

/// Binary PGM (P5, 8-bit). Pixels are scaled so the largest magnitude maps
/// to 255; wavefunction grids are shown as |psi|. Row i becomes image row i.
std::vector<std::uint8_t> encode_pgm(const PixelGrid& g);
void write_pgm(const std::string& path, const PixelGrid& g);

}  // namespace qbill::imaging
