#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qbill/error.hpp"
#include "qbill/stats/csv.hpp"
#include "qbill/stats/level_statistics.hpp"

using namespace qbill;
using namespace qbill::stats;
using std::numbers::pi;

TEST_CASE("unfold rescales to unit mean spacing") {
    const std::vector<double> ladder{0, 1, 2, 3};
    CHECK(unfold(ladder).levels == ladder);
    const std::vector<double> wide{0, 2, 4};
    const auto u = unfold(wide, 1, 0.5);
    CHECK(u.levels == std::vector<double>{0, 1, 2});
    CHECK(u.mean_spacing == 2.0);
    CHECK(u.parity == 1);
    CHECK(u.spacings() == std::vector<double>{1, 1});
    CHECK_THROWS(unfold(std::vector<double>{1.0}));
}

TEST_CASE("spacing histogram of a ladder puts all mass in one bin") {
    const std::vector<double> ladder{0, 1, 2, 3, 4, 5};
    const auto h = spacing_histogram(unfold(ladder), 1, 4.0);
    REQUIRE(h.num_bins() == 1u);
    CHECK(h.counts[0] == 5u);
    CHECK(h.densities[0] == doctest::Approx(0.25));
    const auto h4 = spacing_histogram(unfold(ladder), 4, 4.0);
    CHECK(h4.counts == std::vector<std::size_t>{0, 5, 0, 0});
    CHECK(h4.densities[1] == doctest::Approx(1.0));
    CHECK(default_bin_count(100) == 10u);
    CHECK(default_bin_count(0) == 1u);
}

TEST_CASE("generic histogram counts overflow") {
    const std::vector<double> v{0.1, 0.2, 0.6, 1.5};
    const auto h = histogram(v, 2, 0.0, 1.0);
    CHECK(h.counts == std::vector<std::size_t>{2, 1});
    CHECK(h.overflow == 1u);
    double mass = 0.0;
    for (std::size_t b = 0; b < h.num_bins(); ++b) mass += h.densities[b] * (h.edges[b + 1] - h.edges[b]);
    CHECK(mass == doctest::Approx(1.0));
}

TEST_CASE("reference distributions") {
    CHECK(wigner_goe(0.0) == 0.0);
    CHECK(wigner_goe(1.0) == doctest::Approx(pi / 2 * std::exp(-pi / 4)).epsilon(1e-14));
    CHECK(wigner_goe(1.0) == doctest::Approx(0.716186).epsilon(1e-6));
    CHECK(poisson(0.0) == 1.0);
    CHECK(poisson_cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
    // both are unit-mean densities; midpoint rule
    double n_goe = 0, m_goe = 0, n_p = 0, m_p = 0;
    const double ds = 1e-4;
    for (double s = ds / 2; s < 30.0; s += ds) {
        n_goe += wigner_goe(s) * ds;
        m_goe += s * wigner_goe(s) * ds;
        n_p += poisson(s) * ds;
        m_p += s * poisson(s) * ds;
    }
    CHECK(n_goe == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(m_goe == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(n_p == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(m_p == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(wigner_goe_cdf(2.0) == doctest::Approx(1.0 - std::exp(-pi)));
}

TEST_CASE("ks distance separates sampled GOE and Poisson spacings") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    std::exponential_distribution<double> e(1.0);
    std::vector<double> goe, poi;
    for (int k = 0; k < 4000; ++k) {
        // eigenvalue gap of a 2x2 GOE matrix follows the surmise exactly
        const double a = g(rng), d = g(rng), b = g(rng) / std::sqrt(2.0);
        goe.push_back(std::sqrt((a - d) * (a - d) + 4 * b * b));
        poi.push_back(e(rng));
    }
    double mean = 0;
    for (double s : goe) mean += s;
    mean /= static_cast<double>(goe.size());
    for (double& s : goe) s /= mean;
    CHECK(ks_distance(goe, wigner_goe_cdf) < 0.03);
    CHECK(ks_distance(goe, poisson_cdf) > 0.15);
    CHECK(ks_distance(poi, poisson_cdf) < 0.03);
    CHECK(ks_distance(poi, wigner_goe_cdf) > 0.15);
    // single sample at the median of a uniform CDF
    const std::vector<double> one{0.5};
    CHECK(ks_distance(one, [](double s) { return std::clamp(s, 0.0, 1.0); }) == doctest::Approx(0.5));
}

TEST_CASE("delta_min") {
    const std::vector<double> e{0, 1, 3, 3.5};
    CHECK(delta_min(e, 3) == 1.0);
    CHECK(delta_min(e, 4) == 0.5);
    CHECK_THROWS(delta_min(e, 1));
    CHECK_THROWS(delta_min(e, 5));
    const std::vector<std::size_t> grid{2, 3, 4};
    const std::vector<std::vector<double>> one{e};
    CHECK(delta_min_average(one, grid) == std::vector<double>{1.0, 1.0, 0.5});
    const std::vector<std::vector<double>> two{e, {0, 3, 4, 10}};
    CHECK(delta_min_average(two, grid) == std::vector<double>{2.0, 1.0, 0.75});
}

TEST_CASE("power-law fit") {
    std::vector<double> n, v, c;
    for (int k = 1; k <= 20; ++k) {
        n.push_back(10.0 * k);
        v.push_back(3.0 / std::sqrt(10.0 * k));
        c.push_back(0.7);
    }
    const auto f = fit_power_law(n, v);
    CHECK(std::abs(f.amplitude - 3.0) < 1e-10);
    CHECK(std::abs(f.exponent + 0.5) < 1e-10);
    CHECK(std::abs(fit_power_law(n, c).exponent) < 1e-12);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> n50, v50;
    for (int k = 0; k < 50; ++k) {
        const double x = 100.0 * std::pow(10.0, k / 49.0);
        n50.push_back(x);
        v50.push_back(2.0 * std::pow(x, -0.47) * (1.0 + noise(rng)));
    }
    CHECK(std::abs(fit_power_law(n50, v50).exponent + 0.47) < 0.05);
    const std::vector<double> bad{1.0, -1.0};
    const std::vector<double> nn{1.0, 2.0};
    CHECK_THROWS(fit_power_law(nn, bad));
}

TEST_CASE("spearman rank correlation") {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> up{2, 4, 9, 16, 100};
    const std::vector<double> down{5, 4, 3, 2, 1};
    CHECK(spearman(x, up) == doctest::Approx(1.0));
    CHECK(spearman(x, down) == doctest::Approx(-1.0));
    // ties get average ranks 1.5,1.5,3,4,5; Pearson on ranks gives sqrt(9.5/10)
    const std::vector<double> tied{1, 1, 2, 3, 4};
    CHECK(spearman(x, tied) == doctest::Approx(std::sqrt(0.95)));
    const std::vector<double> shuffled{2, 5, 1, 4, 3};
    // d = (-1, -3, 2, 0, 2), sum d^2 = 18, rho = 1 - 6*18/120
    CHECK(spearman(x, shuffled) == doctest::Approx(0.1));
    CHECK_THROWS(spearman(x, std::vector<double>{1, 2}));
}

TEST_CASE("csv emitters") {
    const std::vector<double> ladder{0, 1, 2, 3};
    const auto h = spacing_histogram(unfold(ladder), 2, 4.0);
    const auto text = spacing_histogram_csv(h, true);
    CHECK(text.rfind("bin_left,bin_right,density,p_goe,p_poisson\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(spacing_histogram_csv(h).rfind("bin_left,bin_right,density\n", 0) == 0);
    const std::vector<std::size_t> n{10, 20};
    const std::vector<double> d{0.5, 0.25};
    CHECK(delta_min_csv(n, d).rfind("N,delta_min\n10,", 0) == 0);
    CHECK(csv_table({"a", "b"}, {{1, 2}}).rfind("a,b\n", 0) == 0);
}

TEST_CASE("log-spaced grid") {
    const auto g = log_spaced_grid(100, 2000, 24);
    CHECK(g.front() == 100u);
    CHECK(g.back() == 2000u);
    CHECK(std::is_sorted(g.begin(), g.end()));
    CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
    CHECK(log_spaced_grid(2, 4, 10) == std::vector<std::size_t>{2, 3, 4});
    CHECK_THROWS(log_spaced_grid(0, 4, 3));
}
