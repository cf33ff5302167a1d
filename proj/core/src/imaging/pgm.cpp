#include "qbill/imaging/pgm.hpp"

#include <algorithm>
#include <cmath>

#include "qbill/io/atomic_file.hpp"

namespace qbill::imaging {

std::vector<std::uint8_t> encode_pgm(const PixelGrid& g) {
    const std::string header =
        "P5\n" + std::to_string(g.resolution) + " " + std::to_string(g.resolution) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    double top = 0.0;
    for (double v : g.values) {
        top = std::max(top, std::abs(v));
    }
    const double scale = top > 0.0 ? 255.0 / top : 0.0;
    for (double v : g.values) {
        out.push_back(static_cast<std::uint8_t>(std::clamp(std::lround(std::abs(v) * scale), 0L, 255L)));
    }
    return out;
}

void write_pgm(const std::string& path, const PixelGrid& g) {
    io::write_atomic(path, encode_pgm(g));
}

}  // namespace qbill::imaging
