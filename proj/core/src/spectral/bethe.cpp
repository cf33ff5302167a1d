#include "qbill/spectral/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbill/error.hpp"

namespace qbill::spectral {

std::vector<double> BetheSpectrum::energies() const {
    std::vector<double> out;
    out.reserve(levels.size());
    for (const auto& l : levels) {
        out.push_back(l.energy());
    }
    return out;
}

namespace {

std::int64_t weight_of(const std::array<int, 3>& t, int branch) {
    const std::int64_t b = -branch;
    std::int64_t w = 0;
    for (int n : t) {
        const std::int64_t x = 3 * static_cast<std::int64_t>(n) + b;
        w += x * x;
    }
    return w;
}

// All admissible levels with |n_i| <= radius.
std::vector<BetheLevel> enumerate(int radius) {
    std::vector<BetheLevel> out;
    for (int branch : {0, -1, -2}) {
        for (int n1 = -radius; n1 <= radius; ++n1) {
            for (int n2 = n1 + 1; n2 <= radius; ++n2) {
                const int n3 = branch - n1 - n2;
                if (n3 <= n2 || n3 > radius) {
                    continue;
                }
                BetheLevel l;
                l.triple = {n1, n2, n3};
                l.branch = branch;
                l.weight = weight_of(l.triple, branch);
                out.push_back(l);
            }
        }
    }
    return out;
}

}  // namespace

double bethe_level_energy(const std::array<int, 3>& triple, int branch) {
    const double shift = -branch / 3.0;
    double e = 0.0;
    for (int n : triple) {
        e += (n + shift) * (n + shift);
    }
    return 2.0 * e;
}

BetheSpectrum bethe_energies(std::size_t count, int max_radius) {
    if (count == 0) {
        throw DomainError("bethe_energies: count must be >= 1");
    }
    int radius = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(count)))) + 2;
    while (true) {
        radius = std::min(radius, max_radius);
        auto levels = enumerate(radius);
        // A triple outside the box has some |x_i| > radius - 2/3, i.e.
        // weight > (3 radius - 2)^2, so everything at or below that is complete.
        const std::int64_t complete = static_cast<std::int64_t>(3 * radius - 2) * (3 * radius - 2);
        std::erase_if(levels, [&](const BetheLevel& l) { return l.weight > complete; });
        if (levels.size() >= count) {
            std::sort(levels.begin(), levels.end(), [](const BetheLevel& a, const BetheLevel& b) {
                if (a.weight != b.weight) return a.weight < b.weight;
                if (a.branch != b.branch) return a.branch > b.branch;
                return a.triple < b.triple;
            });
            levels.resize(count);
            return BetheSpectrum{std::move(levels)};
        }
        if (radius == max_radius) {
            throw DomainError("bethe_energies: search radius " + std::to_string(max_radius) +
                              " exhausted before " + std::to_string(count) + " levels");
        }
        radius *= 2;
    }
}

AccuracyReport benchmark_accuracy(std::span<const double> computed, const BetheSpectrum& bethe) {
    if (computed.size() != bethe.size()) {
        throw ShapeError("benchmark_accuracy: " + std::to_string(computed.size()) +
                         " computed levels vs " + std::to_string(bethe.size()) + " Bethe levels");
    }
    AccuracyReport r;
    r.relative_error.reserve(computed.size());
    for (std::size_t i = 0; i < computed.size(); ++i) {
        const double exact = bethe.levels[i].energy();
        const double eps = (exact - computed[i]) / exact;
        r.relative_error.push_back(eps);
        r.below_1e4 += std::abs(eps) < 1e-4;
        r.below_1e3 += std::abs(eps) < 1e-3;
    }
    return r;
}

AccuracyReport benchmark_accuracy(const EigenSolution& eig, const BetheSpectrum& bethe) {
    if (eig.mass.inv_kappa() != 1.0) {
        throw DomainError("benchmark_accuracy: Bethe energies apply to kappa = 1 only");
    }
    return benchmark_accuracy(std::span<const double>(eig.energies), bethe);
}

}  // namespace qbill::spectral
