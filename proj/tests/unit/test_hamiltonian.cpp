#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gpdwell/error.hpp"
#include "gpdwell/hamiltonian.hpp"
#include "near.hpp"

using namespace gpdwell;

namespace {

std::vector<double> sample(const Grid& g, double (*f)(double)) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.node(i));
    return v;
}

}  // namespace

TEST_CASE("kinetic operator entries") {
    const Grid g(5.0, 10);
    const auto k = kinetic_operator(g);
    REQUIRE(k.size() == 9);
    REQUIRE(k.offdiag.size() == 8);
    for (double d : k.diag) CHECK(d == 1.0);
    for (double o : k.offdiag) CHECK(o == -0.5);

    const Grid fine(1.0, 100);
    const auto kf = kinetic_operator(fine);
    const double h = fine.spacing();
    CHECK(kf.diag[3] == rel(1.0 / (h * h)));
    CHECK(kf.offdiag[3] == rel(-0.5 / (h * h)));
}

TEST_CASE("second_derivative_at is exact on low-order polynomials") {
    const Grid g(2.0, 40);
    const auto c = sample(g, [](double) { return 3.0; });
    const auto lin = sample(g, [](double x) { return 2.0 * x - 1.0; });
    const auto sq = sample(g, [](double x) { return x * x; });
    for (int i = 1; i < 40; ++i) {
        CHECK(second_derivative_at(g, c, i) == doctest::Approx(0.0));
        CHECK(std::abs(second_derivative_at(g, lin, i)) < 1e-9);
        CHECK(second_derivative_at(g, sq, i) == rel(2.0, 1e-9));
    }
    CHECK_THROWS_AS(second_derivative_at(g, sq, 0), ValidationError);
    CHECK_THROWS_AS(second_derivative_at(g, sq, 40), ValidationError);
}

TEST_CASE("second derivative of cos at the origin within the Taylor bound") {
    const Grid g(1.0, 200);  // delta = 0.01
    const auto c = sample(g, [](double x) { return std::cos(x); });
    const double h = g.spacing();
    const double bound = h * h / 12.0;  // |f''''| <= 1
    CHECK(std::abs(second_derivative_at(g, c, g.center_index()) + 1.0) <= bound);
    CHECK(bound <= 1e-4);
}

TEST_CASE("kinetic operator reproduces the stencil on interior samples") {
    const Grid g(2.0, 40);
    const auto sq = sample(g, [](double x) { return x * x; });
    std::vector<double> interior(sq.begin() + 1, sq.end() - 1);
    const auto k = kinetic_operator(g);
    const auto out = k.apply(interior);
    for (std::size_t i = 1; i + 1 < interior.size(); ++i) CHECK(out[i] == rel(-1.0));
}

TEST_CASE("assemble adds potential and interaction diagonals") {
    const Grid g(3.0, 60);
    std::vector<double> zero(g.interior_size(), 0.0);
    std::vector<double> density(g.interior_size());
    double norm = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        const double x = g.node(i + 1);
        density[i] = std::exp(-x * x);
        norm += density[i] * g.spacing();
    }
    for (auto& d : density) d /= norm;

    const auto lin = assemble(g, TrapConfig{2.0, 0.0}, density);
    const auto lin0 = assemble(g, TrapConfig{2.0, 0.0}, zero);
    const auto empty = assemble(g, TrapConfig{2.0, 7.0}, zero);
    CHECK(lin.diag == lin0.diag);
    CHECK(empty.diag == lin0.diag);

    const auto full = assemble(g, TrapConfig{2.0, 1.0}, density);
    const std::size_t c = static_cast<std::size_t>(g.center_index() - 1);
    const double h = g.spacing();
    CHECK(full.diag[c] == rel(1.0 / (h * h) + 0.0 + density[c]));
    CHECK(full.offdiag == lin.offdiag);
    for (std::size_t i = 0; i < full.size(); ++i) {
        CHECK(full.diag[i] == rel(1.0 / (h * h) + potential(g.node(i + 1), 2.0) + density[i]));
    }
}

TEST_CASE("assemble is symmetric and monotone in beta") {
    const Grid g(2.0, 16);
    std::vector<double> density(g.interior_size(), 0.1);
    const auto a = assemble(g, TrapConfig{1.5, 0.3}, density);
    const auto dense = a.dense();
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) CHECK(dense[i * n + j] == dense[j * n + i]);
    }
    const auto b = assemble(g, TrapConfig{1.5, 0.9}, density);
    for (std::size_t i = 0; i < n; ++i) CHECK(b.diag[i] >= a.diag[i]);
}

TEST_CASE("assemble rejects bad densities") {
    const Grid g(2.0, 16);
    std::vector<double> density(g.interior_size(), 0.1);
    density[3] = -1e-3;
    CHECK_THROWS_AS(assemble(g, TrapConfig{1.0, 1.0}, density), ValidationError);
    CHECK_THROWS_AS(assemble(g, TrapConfig{1.0, 1.0}, std::vector<double>(4, 0.0)), ValidationError);
}

TEST_CASE("forward derivative") {
    const Grid g(1.0, 10);
    const auto lin = sample(g, [](double x) { return 4.0 * x; });
    for (int i = 0; i < 10; ++i) CHECK(forward_derivative_at(g, lin, i) == rel(4.0));
    CHECK_THROWS_AS(forward_derivative_at(g, lin, 10), ValidationError);
}
