#include "qbill/imaging/noise.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qbill/error.hpp"

namespace qbill::imaging {

PixelGrid symmetric_field(int resolution, double sigma, int transpose_sign, int mirror_sign,
                          std::mt19937_64& rng) {
    if (!(sigma >= 0.0)) {
        throw DomainError("noise standard deviation must be non-negative");
    }
    PixelGrid field(resolution, GridKind::wavefunction);
    if (sigma == 0.0) {
        return field;
    }
    const int r = resolution;
    std::normal_distribution<double> normal(0.0, sigma);
    std::vector<char> done(field.values.size(), 0);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            if (done[static_cast<std::size_t>(i * r + j)]) {
                continue;
            }
            const std::array<std::pair<std::pair<int, int>, int>, 4> orbit{{
                {{i, j}, +1},
                {{j, i}, transpose_sign},
                {{r - 1 - i, r - 1 - j}, mirror_sign},
                {{r - 1 - j, r - 1 - i}, transpose_sign * mirror_sign},
            }};
            // A group element that fixes this pixel with character -1 forces zero.
            bool forced_zero = false;
            for (std::size_t g = 1; g < orbit.size(); ++g) {
                if (orbit[g].first == std::make_pair(i, j) && orbit[g].second < 0) {
                    forced_zero = true;
                }
            }
            const double x = forced_zero ? 0.0 : normal(rng);
            for (const auto& [pos, sign] : orbit) {
                field.at(pos.first, pos.second) = sign * x;
                done[static_cast<std::size_t>(pos.first * r + pos.second)] = 1;
            }
        }
    }
    return field;
}

int grid_mirror_parity(const PixelGrid& psi) {
    const int r = psi.resolution;
    double s = 0.0;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            s += psi.at(i, j) * psi.at(r - 1 - i, r - 1 - j);
        }
    }
    return s >= 0.0 ? +1 : -1;
}

PixelGrid multiplicative_noise(const PixelGrid& psi, double sigma, std::uint64_t seed) {
    if (psi.kind != GridKind::wavefunction) {
        throw DomainError("multiplicative_noise acts on wavefunction grids");
    }
    std::mt19937_64 rng(seed);
    const PixelGrid r = symmetric_field(psi.resolution, sigma, +1, +1, rng);
    PixelGrid out = psi;
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] = psi.values[k] * (1.0 + r.values[k]);
    }
    return normalize(std::move(out));
}

PixelGrid additive_noise(const PixelGrid& psi, double sigma, double weight, std::uint64_t seed) {
    if (psi.kind != GridKind::wavefunction) {
        throw DomainError("additive_noise acts on wavefunction grids");
    }
    if (!(weight >= 0.0)) {
        throw DomainError("additive noise weight must be non-negative");
    }
    // G is relative to a unit-norm state
    const PixelGrid base = normalize(psi);
    std::mt19937_64 rng(seed);
    const PixelGrid r = symmetric_field(psi.resolution, sigma, -1, grid_mirror_parity(base), rng);
    PixelGrid out = base;
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] = base.values[k] + weight * r.values[k];
    }
    return normalize(std::move(out));
}

RandomDistribution parse_distribution(std::string_view name) {
    if (name == "gaussian") return RandomDistribution::gaussian;
    if (name == "laplace") return RandomDistribution::laplace;
    if (name == "uniform") return RandomDistribution::uniform;
    throw DomainError("unknown distribution '" + std::string(name) + "'");
}

std::string_view to_string(RandomDistribution d) {
    switch (d) {
        case RandomDistribution::gaussian: return "gaussian";
        case RandomDistribution::laplace: return "laplace";
        case RandomDistribution::uniform: return "uniform";
    }
    return "?";
}

PixelGrid random_image(int resolution, double zero_fraction, RandomDistribution distribution,
                       std::uint64_t seed) {
    if (!(zero_fraction >= 0.0 && zero_fraction < 1.0)) {
        throw DomainError("zero fraction must lie in [0, 1)");
    }
    PixelGrid g(resolution, GridKind::density);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::exponential_distribution<double> exponential(1.0);  // |Laplace(0, 1)|
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    // draws are amplitudes of a random state; the image is its density
    for (double& v : g.values) {
        double a = 0.0;
        switch (distribution) {
            case RandomDistribution::gaussian: a = normal(rng); break;
            case RandomDistribution::laplace: a = exponential(rng); break;
            case RandomDistribution::uniform: a = uniform(rng); break;
        }
        v = a * a;
    }
    const auto zeros =
        static_cast<std::size_t>(std::lround(zero_fraction * static_cast<double>(g.values.size())));
    std::vector<std::size_t> idx(g.values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t k = 0; k < zeros; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, idx.size() - 1);
        std::swap(idx[k], idx[pick(rng)]);
        g.values[idx[k]] = 0.0;
    }
    return normalize(std::move(g));
}

}  // namespace qbill::imaging
