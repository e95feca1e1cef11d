#include <doctest.h>

#include <cmath>

#include "gpdwell/critical.hpp"
#include "gpdwell/error.hpp"
#include "oracles.hpp"
#include "near.hpp"

using namespace gpdwell;

namespace {

const Grid& grid4000() {
    static const Grid g(6.0, 4000);
    return g;
}

}  // namespace

TEST_CASE("central curvature changes sign between shallow and deep wells") {
    CHECK(curvature_sign(TrapConfig{1.0, 0.0}, grid4000()) < 0.0);
    CHECK(curvature_sign(TrapConfig{2.5, 0.0}, grid4000()) > 0.0);
    CHECK(curvature_sign(TrapConfig{2.5, 1.0}, grid4000()) > 0.0);
}

TEST_CASE("bracket with equal signs is rejected") {
    CHECK_THROWS_AS(find_critical_a(0.0, {3.0, 4.0}, 1e-4, grid4000()), ValidationError);
    CHECK_THROWS_AS(find_critical_a(0.0, {2.0, 1.0}, 1e-4, grid4000()), ValidationError);
    CHECK_THROWS_AS(find_critical_a(0.0, {0.5, 3.0}, 0.0, grid4000()), ValidationError);
}

TEST_CASE("critical depth at beta = 0 and its shift with interaction") {
    const auto r0 = find_critical_a(0.0, {0.5, 3.0}, 1e-4, grid4000());
    CHECK(r0.bracket.second - r0.bracket.first < 1e-4);
    CHECK(r0.a_c > r0.bracket.first);
    CHECK(r0.a_c < r0.bracket.second);
    CHECK(curvature_sign(TrapConfig{r0.bracket.first, 0.0}, grid4000()) < 0.0);
    CHECK(curvature_sign(TrapConfig{r0.bracket.second, 0.0}, grid4000()) > 0.0);
    CHECK(r0.a_c == rel(1.7617, 1e-3));
    CHECK(std::abs(r0.E_c) < 1e-3);
    CHECK(r0.probes > 0);
    CHECK(r0.skipped_probes == 0);

    const auto r1 = find_critical_a(0.5, {0.5, 3.0}, 1e-4, grid4000());
    CHECK(r1.a_c < r0.a_c);
    CHECK(r1.E_c > r0.E_c);

    SUBCASE("stable under grid refinement") {
        const auto fine = find_critical_a(0.0, {0.5, 3.0}, 1e-4, Grid(6.0, 8000));
        CHECK(std::abs(fine.a_c - r0.a_c) < 2e-3);
    }
}

TEST_CASE("a_c decreases and E_c increases with beta") {
    double last_a = 1e9, last_e = -1e9;
    for (double beta : {0.0, 1.0, 2.0, 3.0, 4.0}) {
        const auto r = find_critical_a(beta, {0.5, 3.0}, 1e-4, Grid(6.0, 2000));
        CHECK(r.a_c < last_a);
        CHECK(r.E_c > last_e);
        last_a = r.a_c;
        last_e = r.E_c;
    }
}

TEST_CASE("fit_quadratic") {
    std::vector<std::pair<double, double>> exact;
    for (double x : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) exact.emplace_back(x, 1.75 - 0.15 * x + 0.006 * x * x);
    const auto f = fit_quadratic(exact);
    CHECK(f.c0 == rel(1.75, 1e-10));
    CHECK(f.c1 == rel(-0.15, 1e-10));
    CHECK(f.c2 == rel(0.006, 1e-8));
    CHECK(f.residual_rms < 1e-12);
    CHECK(f(2.0) == rel(1.75 - 0.3 + 0.024));

    std::vector<std::pair<double, double>> noisy;
    for (int i = 0; i < 9; ++i) {
        const double x = 0.5 * i;
        noisy.emplace_back(x, 0.3 * x - 0.01 * x * x + 0.002 * std::sin(7.0 * i));
    }
    const auto g = fit_quadratic(noisy);
    const auto ref = oracle::quadratic_least_squares(noisy);
    CHECK(g.c0 == rel(ref[0], 1e-9));
    CHECK(g.c1 == rel(ref[1], 1e-9));
    CHECK(g.c2 == rel(ref[2], 1e-9));
    CHECK(g.residual_rms > 0.0);

    std::vector<std::pair<double, double>> few(exact.begin(), exact.begin() + 3);
    CHECK_THROWS_AS(fit_quadratic(few), ValidationError);
    std::vector<std::pair<double, double>> two_x{{0, 1}, {0, 2}, {1, 3}, {1, 4}};
    CHECK_THROWS_AS(fit_quadratic(two_x), ValidationError);
}
