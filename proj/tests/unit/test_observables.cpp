#include <doctest.h>

#include <cmath>

#include "gpdwell/error.hpp"
#include "gpdwell/observables.hpp"
#include "gpdwell/scf.hpp"
#include "near.hpp"

using namespace gpdwell;

namespace {

std::vector<double> gaussian(const Grid& g, double centre, bool odd = false) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.node(i);
        v[i] = std::exp(-(x - centre) * (x - centre)) * (odd ? x : 1.0);
    }
    v.front() = v.back() = 0.0;
    double n = 0.0;
    for (double s : v) n += s * s;
    n = std::sqrt(n * g.spacing());
    for (auto& s : v) s /= n;
    return v;
}

}  // namespace

TEST_CASE("energy equals mu at beta = 0") {
    const Grid g(6.0, 2000);
    for (int n = 0; n < 3; ++n) {
        auto r = solve_state(g, TrapConfig{3.0, 0.0}, n);
        CHECK(energy(g, r.state, TrapConfig{3.0, 0.0}) == rel(r.state.mu, 1e-6));
    }
}

TEST_CASE("mu - E equals the interaction term for beta > 0") {
    const Grid g(6.0, 2000);
    for (double beta : {0.2, 1.0}) {
        auto r = solve_state(g, TrapConfig{2.0, beta}, 0);
        const double e = energy(g, r.state, TrapConfig{2.0, beta});
        CHECK(e < r.state.mu);
        CHECK(std::abs(r.state.mu - e - interaction_energy(g, r.state.psi, beta)) <= 1e-6);
        CHECK(r.state.energy == e);
    }
}

TEST_CASE("ground energy changes sign across the critical depth") {
    const Grid g(6.0, 4000);
    CHECK(solve_state(g, TrapConfig{1.80, 0.0}, 0).state.energy < 0.0);
    CHECK(solve_state(g, TrapConfig{1.72, 0.0}, 0).state.energy > 0.0);
}

TEST_CASE("energy is invariant under sign flip and reflection") {
    const Grid g(4.0, 400);
    auto psi = gaussian(g, 0.7);
    const TrapConfig trap{2.0, 0.5};
    const double e = energy_functional(g, psi, trap);
    auto flipped = psi;
    for (auto& v : flipped) v = -v;
    std::vector<double> reversed(psi.rbegin(), psi.rend());
    CHECK(energy_functional(g, flipped, trap) == rel(e, 1e-14));
    CHECK(energy_functional(g, reversed, trap) == rel(e, 1e-12));
}

TEST_CASE("splitting") {
    const Grid g(6.0, 2000);
    std::vector<StationaryState> states;
    for (int n = 0; n < 3; ++n) states.push_back(solve_state(g, TrapConfig{5.0, 0.0}, n).state);
    const auto gaps = splitting(states);
    REQUIRE(gaps.size() == 2);
    CHECK(gaps[0] >= -1e-10);
    CHECK(gaps[0] < gaps[1]);

    std::vector<StationaryState> same(2, states[0]);
    CHECK(splitting(same)[0] == 0.0);

    auto missing = states;
    missing[1].energy = std::nan("");
    CHECK_THROWS_AS(splitting(missing), ValidationError);
    CHECK_THROWS_AS(splitting(std::span<const StationaryState>(states.data(), 1)), ValidationError);
}

TEST_CASE("lowest splitting shrinks as the wells deepen at beta = 0") {
    const Grid g(6.0, 2000);
    double previous = 1e300;
    for (double a : {2.0, 3.0, 4.0, 5.0}) {
        std::vector<StationaryState> s;
        for (int n = 0; n < 2; ++n) s.push_back(solve_state(g, TrapConfig{a, 0.0}, n).state);
        const double gap = splitting(s)[0];
        CHECK(gap < previous);
        previous = gap;
    }
}

TEST_CASE("lowest splitting grows with beta at a = 2") {
    const Grid g(6.0, 4000);
    double previous = -1.0;
    for (double beta : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        std::vector<StationaryState> s;
        for (int n = 0; n < 2; ++n) s.push_back(solve_state(g, TrapConfig{2.0, beta}, n).state);
        const double gap = splitting(s)[0];
        CHECK(gap > previous);
        previous = gap;
    }
}

TEST_CASE("overlap matrix") {
    const Grid g(6.0, 4000);
    SUBCASE("linear states are orthogonal") {
        std::vector<StationaryState> s;
        for (int n = 0; n < 4; ++n) s.push_back(solve_state(g, TrapConfig{3.0, 0.0}, n).state);
        const auto c = overlap_matrix(g, s);
        for (int i = 0; i < 4; ++i) {
            CHECK(c(i, i) == rel(1.0, 1e-10));
            for (int j = 0; j < 4; ++j) {
                if (i != j) CHECK(c(i, j) <= 1e-6);
                CHECK(c(i, j) == c(j, i));
            }
        }
    }
    SUBCASE("nonlinear states: parity orthogonality survives, same parity loses it") {
        double previous = -1.0;
        for (double beta : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
            std::vector<StationaryState> s;
            for (int n = 0; n < 4; ++n) s.push_back(solve_state(g, TrapConfig{5.0, beta}, n).state);
            const auto c = overlap_matrix(g, s);
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    CHECK(c(i, j) <= 1.0 + 1e-10);
                    CHECK(c(i, j) >= 0.0);
                    if ((i + j) % 2 == 1) CHECK(c(i, j) <= 1e-8);
                }
            }
            CHECK(c(0, 2) > previous);
            previous = c(0, 2);
        }
    }
    SUBCASE("grid mismatch") {
        std::vector<StationaryState> s;
        s.push_back(solve_state(g, TrapConfig{3.0, 0.0}, 0).state);
        s.push_back(solve_state(Grid(6.0, 2000), TrapConfig{3.0, 0.0}, 0).state);
        CHECK_THROWS_AS(overlap_matrix(g, s), ValidationError);
    }
}

TEST_CASE("parity_of") {
    const Grid g(5.0, 500);
    CHECK(parity_of(g, gaussian(g, 0.0)) == Parity::Even);
    CHECK(parity_of(g, gaussian(g, 0.0, true)) == Parity::Odd);
    CHECK(parity_of(g, gaussian(g, 1.0)) == Parity::None);
    CHECK(to_string(Parity::Even) == "even");
}

TEST_CASE("inner product is the Riemann sum") {
    const Grid g(5.0, 10);
    std::vector<double> u(g.size(), 1.0), v(g.size(), 2.0);
    CHECK(inner_product(g, u, v) == rel(20.0));
}
