#include "qbill/imaging/bosonic.hpp"

#include <algorithm>
#include <cmath>

#include "qbill/error.hpp"

namespace qbill::imaging {

PixelGrid bosonic_state(int k1, int k2, int resolution, double length) {
    if (k1 < 1 || k2 < k1) {
        throw DomainError("bosonic state needs 1 <= k1 <= k2");
    }
    PixelGrid g(resolution, GridKind::wavefunction, length);
    const double norm = (k1 == k2 ? 1.0 : std::sqrt(2.0)) / length;
    std::vector<double> s1(static_cast<std::size_t>(resolution));
    std::vector<double> s2(s1.size());
    for (int i = 0; i < resolution; ++i) {
        const double z = pixel_center(i, resolution, length) * std::numbers::pi / length;
        s1[static_cast<std::size_t>(i)] = std::sin(k1 * z);
        s2[static_cast<std::size_t>(i)] = std::sin(k2 * z);
    }
    // upper triangle mirrored so the grid is exactly symmetric
    for (int i = 0; i < resolution; ++i) {
        for (int j = i; j < resolution; ++j) {
            const auto a = static_cast<std::size_t>(i);
            const auto b = static_cast<std::size_t>(j);
            g.at(i, j) = norm * (s1[a] * s2[b] + s2[a] * s1[b]);
            g.at(j, i) = g.at(i, j);
        }
    }
    return g;
}

std::vector<BosonicPair> bosonic_pairs(std::size_t first, std::size_t count) {
    const std::size_t need = first + count;
    // All pairs with k1^2 + k2^2 <= K^2 fit in a quarter disc; grow K until the
    // energy of the last needed pair is below the guaranteed-complete radius.
    int kmax = 8;
    for (;;) {
        std::vector<BosonicPair> pairs;
        for (int a = 1; a <= kmax; ++a) {
            for (int b = a; b <= kmax; ++b) {
                pairs.push_back({a, b});
            }
        }
        std::sort(pairs.begin(), pairs.end(), [](const BosonicPair& x, const BosonicPair& y) {
            const int ex = x.k1 * x.k1 + x.k2 * x.k2;
            const int ey = y.k1 * y.k1 + y.k2 * y.k2;
            return ex != ey ? ex < ey : x.k1 < y.k1;
        });
        if (pairs.size() >= need) {
            const BosonicPair& last = pairs[need - 1];
            if (last.k1 * last.k1 + last.k2 * last.k2 <= (kmax + 1) * (kmax + 1)) {
                return {pairs.begin() + static_cast<std::ptrdiff_t>(first),
                        pairs.begin() + static_cast<std::ptrdiff_t>(need)};
            }
        }
        kmax *= 2;
    }
}

}  // namespace qbill::imaging
