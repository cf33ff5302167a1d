#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qbill/error.hpp"
#include "qbill/spectral/basis.hpp"
#include "qbill/spectral/bethe.hpp"
#include "qbill/spectral/eigen_solution.hpp"
#include "qbill/spectral/geometry.hpp"
#include "qbill/spectral/hamiltonian.hpp"
#include "qbill/spectral/spectrum_file.hpp"

using namespace qbill;
using namespace qbill::spectral;
using std::numbers::pi;

namespace {

// Gauss-Legendre nodes on [a, b] by Newton iteration on P_n.
struct Quadrature {
    std::vector<double> x, w;
};

Quadrature gauss_legendre(int n, double a, double b) {
    Quadrature q;
    for (int i = 1; i <= n; ++i) {
        double z = std::cos(pi * (i - 0.25) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        q.x.push_back(0.5 * (b - a) * z + 0.5 * (b + a));
        q.w.push_back((b - a) / ((1.0 - z * z) * dp * dp));
    }
    return q;
}

// (d1 + d2) xi_{n1,n2} at (z1, z2), xi normalized on the square with N = sqrt(2)/pi
double mixed_derivative(int n1, int n2, double z1, double z2) {
    const double N = std::sqrt(2.0) / pi;
    auto xi_d1 = [&](int a, int b) { return a * std::cos(a * z1) * std::sin(b * z2); };
    auto xi_d2 = [&](int a, int b) { return b * std::sin(a * z1) * std::cos(b * z2); };
    return N * (xi_d1(n1, n2) - xi_d1(n2, n1) + xi_d2(n1, n2) - xi_d2(n2, n1));
}

// <xi_m| -1/2 Laplacian - 1/(2 kappa) (d1 + d2)^2 |xi_n> by quadrature
double quadrature_element(const BasisIndex& m, const BasisIndex& n, double inv_kappa, const Quadrature& q) {
    double mixed = 0.0;
    for (std::size_t i = 0; i < q.x.size(); ++i) {
        for (std::size_t j = 0; j < q.x.size(); ++j) {
            mixed += q.w[i] * q.w[j] * mixed_derivative(m.n1, m.n2, q.x[i], q.x[j]) *
                     mixed_derivative(n.n1, n.n2, q.x[i], q.x[j]);
        }
    }
    const double kinetic = m == n ? 0.5 * (n.n1 * n.n1 + n.n2 * n.n2) : 0.0;
    return kinetic + 0.5 * inv_kappa * mixed;
}

}  // namespace

TEST_CASE("linear index follows the closed formula") {
    CHECK(linear_index(1, 2, 130) == 1);
    CHECK(linear_index(2, 3, 130) == 130);
    CHECK(inverse_index(1, 130) == std::pair{1, 2});
    CHECK(inverse_index(130, 130) == std::pair{2, 3});
}

TEST_CASE("linear index round-trips over every pair at c=20") {
    const int c = 20;
    int count = 0;
    std::set<long> seen;
    for (int a = 1; a < c; ++a) {
        for (int b = a + 1; b < c; ++b) {
            const long n = linear_index(a, b, c);
            CHECK(inverse_index(n, c) == std::pair{a, b});
            seen.insert(n);
            ++count;
        }
    }
    CHECK(count == 171);
    CHECK(seen.size() == 171u);
    CHECK_THROWS_AS(linear_index(3, 2, c), DomainError);
    CHECK_THROWS_AS(linear_index(1, 20, c), DomainError);
    // the index range has gaps; n = c - 1 is not produced by any pair
    CHECK_THROWS_AS(inverse_index(c - 1, c), DomainError);
}

TEST_CASE("interaction integral") {
    CHECK(interaction_integral(1, 1) == 4.0);
    CHECK(interaction_integral(2, 1) == 0.0);
    CHECK(interaction_integral(0, 3) == 0.0);
    CHECK(interaction_integral(-1, 3) == doctest::Approx(-4.0 / 3.0));
}

TEST_CASE("matrix element examples") {
    const auto a = make_basis_index(2, 1, 20);
    CHECK(matrix_element(a, a, MassRatio::infinite()) == 2.5);
    CHECK(matrix_element(a, make_basis_index(3, 1, 20), MassRatio::from_kappa(1.0)) == 0.0);
    CHECK(basis_dimension(130) == 8256u);
}

TEST_CASE("matrix elements agree with direct quadrature of the mixed derivative") {
    const auto q = gauss_legendre(48, 0.0, pi);
    const PairBasis basis(9);
    const double inv = 0.5;
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const double expect = quadrature_element(basis[i], basis[j], inv, q);
            worst = std::max(worst, std::abs(matrix_element(basis[i], basis[j], MassRatio::from_inverse(inv)) - expect));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("matrix element symmetry and parity selection") {
    const PairBasis basis(20);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    const auto m2 = MassRatio::from_kappa(2.0);
    for (int k = 0; k < 100; ++k) {
        const auto& a = basis[pick(rng)];
        const auto& b = basis[pick(rng)];
        CHECK(matrix_element(a, b, m2) == doctest::Approx(matrix_element(b, a, m2)).epsilon(1e-14));
    }
    const auto m3 = MassRatio::from_kappa(3.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (basis[i].parity() != basis[j].parity()) {
                REQUIRE(matrix_element(basis[i], basis[j], m3) == 0.0);
            }
        }
    }
}

TEST_CASE("assembled hamiltonian is exactly symmetric; diagonal at 1/kappa = 0") {
    const auto h = assemble_hamiltonian(20, MassRatio::from_kappa(2.0));
    CHECK(h.rows() == 171);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
    const PairBasis basis(20);
    const auto h0 = assemble_hamiltonian(basis, MassRatio::infinite());
    for (Eigen::Index i = 0; i < h0.rows(); ++i) {
        for (Eigen::Index j = 0; j < h0.cols(); ++j) {
            const double expect = i == j ? 0.5 * (basis[i].n1 * basis[i].n1 + basis[i].n2 * basis[i].n2) : 0.0;
            REQUIRE(h0(i, j) == expect);
        }
    }
}

TEST_CASE("diagonal limit energies are (n1^2 + n2^2)/2") {
    for (int c : {7, 20, 33}) {
        const auto s = solve(MassRatio::infinite(), c, {.coefficients = true, .max_states = {}, .parity = {}});
        std::vector<double> expect;
        for (int a = 1; a < c; ++a)
            for (int b = a + 1; b < c; ++b) expect.push_back(0.5 * (a * a + b * b));
        std::sort(expect.begin(), expect.end());
        REQUIRE(s.size() == expect.size());
        for (std::size_t k = 0; k < expect.size(); ++k) CHECK(std::abs(s.energies[k] - expect[k]) < 1e-12);
        // eigenvectors are unit basis vectors
        for (std::size_t k = 0; k < s.size(); ++k) CHECK(s.coefficients.row(static_cast<Eigen::Index>(k)).cwiseAbs().maxCoeff() == 1.0);
    }
}

TEST_CASE("block and full diagonalization agree on the merged spectrum") {
    const auto m = MassRatio::from_kappa(3.0);
    const auto blocks = solve(m, 20, {.coefficients = true, .max_states = {}, .parity = {}});
    const auto full = diagonalize(assemble_hamiltonian(20, m), PairBasis(20), m, true);
    REQUIRE(blocks.size() == full.size());
    for (std::size_t k = 0; k < full.size(); ++k) CHECK(std::abs(blocks.energies[k] - full.energies[k]) < 1e-10);
    // every eigenvector of a block carries that block's parity
    const auto odd = solve(m, 20, {.coefficients = true, .max_states = {}, .parity = -1});
    for (std::size_t k = 0; k < odd.size(); ++k) CHECK(parity_of_state(odd.state(k), 20) == -1);
    // orthonormal rows
    const Eigen::MatrixXd gram = blocks.coefficients * blocks.coefficients.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("parity of pure basis states follows the sine reflection identity") {
    const PairBasis basis(6);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        std::vector<double> v(basis.size(), 0.0);
        v[k] = 1.0;
        // psi(pi - z1, pi - z2) = (-1)^(n1+n2) psi(z1, z2) since sin(n(pi - z)) = (-1)^(n+1) sin(nz)
        const auto& b = basis[k];
        const double z1 = 0.3, z2 = 1.1;
        auto psi = [&](double x, double y) {
            return std::sin(b.n1 * x) * std::sin(b.n2 * y) - std::sin(b.n2 * x) * std::sin(b.n1 * y);
        };
        const int reflected = psi(pi - z1, pi - z2) / psi(z1, z2) > 0 ? 1 : -1;
        CHECK(parity_of_state(v, 6) == reflected);
    }
    std::vector<double> mixed(basis.size(), 0.0);
    mixed[*basis.position(2, 1)] = std::sqrt(0.5);
    mixed[*basis.position(3, 1)] = std::sqrt(0.5);
    CHECK_THROWS_AS(parity_of_state(mixed, 6), DomainError);
}

TEST_CASE("variational monotonicity in the cutoff") {
    const auto m = MassRatio::from_kappa(2.0);
    const auto small = solve(m, 24);
    const auto large = solve(m, 36);
    for (std::size_t k = 0; k < 60; ++k) CHECK(large.energies[k] <= small.energies[k] + 1e-12);
}

TEST_CASE("bethe levels") {
    // brute-force oracle over a fixed box of integers
    std::vector<double> expect;
    for (int b = 0; b <= 2; ++b)
        for (int x = -30; x <= 30; ++x)
            for (int y = x + 1; y <= 30; ++y) {
                const int z = -b - x - y;
                if (z <= y || z > 30) continue;
                const double s = (x + b / 3.0) * (x + b / 3.0) + (y + b / 3.0) * (y + b / 3.0) +
                                 (z + b / 3.0) * (z + b / 3.0);
                expect.push_back(2.0 * s);
            }
    std::sort(expect.begin(), expect.end());
    const auto bs = bethe_energies(200);
    REQUIRE(bs.size() == 200u);
    for (std::size_t k = 0; k < 200; ++k) CHECK(bs.levels[k].energy() == doctest::Approx(expect[k]).epsilon(1e-13));
    CHECK(bs.levels[0].energy() == doctest::Approx(4.0));
    CHECK(bs.levels[1].energy() == doctest::Approx(28.0 / 3));
    CHECK(bs.levels[2].energy() == doctest::Approx(28.0 / 3));
    // the lowest zero-sum triple (-1, 0, 1) gives 2 * (1 + 0 + 1) = 4
    CHECK(bethe_level_energy({-1, 0, 1}, 0) == doctest::Approx(4.0));
    for (const auto& l : bethe_energies(500).levels) {
        REQUIRE(bethe_level_energy(l.triple, l.branch) == doctest::Approx(l.energy()).epsilon(1e-15));
        REQUIRE(l.triple[0] < l.triple[1]);
        REQUIRE(l.triple[1] < l.triple[2]);
        REQUIRE(l.triple[0] + l.triple[1] + l.triple[2] == l.branch);
    }
}

TEST_CASE("bethe benchmark at desk scale") {
    const auto s = solve(MassRatio::from_kappa(1.0), 60);
    const auto bethe = bethe_energies(s.size());
    const auto report = benchmark_accuracy(s, bethe);
    for (std::size_t k = 0; k < 100; ++k) CHECK(std::abs(report.relative_error[k]) < 1e-2);
    const auto zero = benchmark_accuracy(bethe.energies(), bethe);
    CHECK(std::all_of(zero.relative_error.begin(), zero.relative_error.end(), [](double e) { return e == 0.0; }));
    CHECK_THROWS_AS(benchmark_accuracy(std::vector<double>{1.0}, bethe), ShapeError);
}

TEST_CASE("weyl density and triangle geometry") {
    CHECK(weyl_density(MassRatio::infinite()) == doctest::Approx(pi / 4).epsilon(1e-14));
    CHECK(weyl_density(MassRatio::from_kappa(1.0)) == doctest::Approx(pi / (4 * std::sqrt(3.0))).epsilon(1e-14));
    CHECK(weyl_density(MassRatio::from_inverse(0.2)) > weyl_density(MassRatio::from_inverse(0.5)));
    const double deg = 180.0 / pi;
    CHECK(triangle_geometry(MassRatio::from_kappa(1.0)).base * deg == doctest::Approx(60.0));
    CHECK(triangle_geometry(MassRatio::infinite()).base * deg == doctest::Approx(45.0));
    CHECK(triangle_geometry(MassRatio::infinite()).apex * deg == doctest::Approx(90.0));
    CHECK(triangle_geometry(MassRatio::from_kappa(2.0)).base * deg == doctest::Approx(54.7356).epsilon(1e-6));
}

TEST_CASE("mass ratio domain") {
    CHECK_THROWS_AS(MassRatio::from_inverse(1.5), DomainError);
    CHECK_THROWS_AS(MassRatio::from_kappa(0.5), DomainError);
    CHECK(MassRatio::from_kappa(INFINITY).inv_kappa() == 0.0);
    CHECK(MassRatio::from_kappa(1.0).integrable());
    CHECK_FALSE(MassRatio::from_kappa(2.0).integrable());
}

TEST_CASE("spectrum file round trip and corruption") {
    const auto s = solve(MassRatio::from_kappa(2.0), 12, {.coefficients = true, .max_states = 20, .parity = {}});
    const auto bytes = encode_spectrum(s);
    const auto back = decode_spectrum(bytes);
    CHECK(back.energies == s.energies);
    CHECK(back.parities == s.parities);
    CHECK(back.coefficients == s.coefficients);
    CHECK(back.mass == s.mass);
    auto cut = bytes;
    cut.resize(cut.size() - 3);
    CHECK_THROWS_AS(decode_spectrum(cut), FormatError);
    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_spectrum(bad), FormatError);
}
