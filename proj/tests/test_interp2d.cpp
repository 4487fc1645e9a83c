#include "fdbvp/interp2d.hpp"

#include "fdbvp/norms.hpp"
#include "fdbvp/random_fields.hpp"

#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>
#include <random>

using namespace fdbvp;

namespace {

GridFunction randomNonneg(const Mesh& m, std::uint64_t seed) {
    GridFunction u(m);
    std::mt19937_64 rng(seed);
    for (double& v : u.values()) v = uniformIn(rng, 0.0, 2.0);
    return u;
}

GridFunction randomSigned(const Mesh& m, std::uint64_t seed) {
    GridFunction u(m);
    std::mt19937_64 rng(seed);
    for (double& v : u.values()) v = uniformIn(rng, -1.0, 1.0);
    return u;
}

}  // namespace

TEST_CASE("interpolant reproduces constants, linears and nodal values") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {4, 5});
    GridFunction c(m);
    for (double& v : c.values()) v = 2.25;
    const auto ic = interpolate(c);
    CHECK(ic.value(0.37, 0.81) == doctest::Approx(2.25).epsilon(1e-14));

    GridFunction x1(m);
    visitAll(m, [&](std::span<const int> idx) { x1.at(idx) = m.coordinate(0, idx[0]); });
    const auto ix = interpolate(x1);
    CHECK(ix.value(0.3, 0.7) == doctest::Approx(0.3).epsilon(1e-13));
    const auto [g1, g2] = ix.gradient(0.3, 0.7);
    CHECK(g1 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(g2 == doctest::Approx(0.0).epsilon(1e-13));

    const GridFunction u = randomSigned(m, 5);
    const auto iu = interpolate(u);
    visitAll(m, [&](std::span<const int> idx) {
        const double x = m.coordinate(0, idx[0]), y = m.coordinate(1, idx[1]);
        CHECK(iu.value(x, y) == doctest::Approx(u.at(idx)).epsilon(1e-12));
    });

    // Continuous across the cell diagonals: probe both sides.
    const double h1 = m.spacing(0), h2 = m.spacing(1);
    for (double t : {0.25, 0.5, 0.75}) {
        const double x = 2 * h1 + t * h1, y = 3 * h2 + t * h2;
        const double below = iu.value(x + 1e-10 * h1, y);
        const double above = iu.value(x - 1e-10 * h1, y);
        CHECK(below == doctest::Approx(above).epsilon(1e-8));
    }
}

TEST_CASE("interpolant gradients match forward differences on edges") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.5}), {5, 4});
    const GridFunction u = randomSigned(m, 6);
    const auto interp = interpolate(u);
    const double h1 = m.spacing(0), h2 = m.spacing(1);
    const double eps = 1e-9;
    // Axis-1 edges: sample just inside the triangle containing the edge.
    for (int i = 0; i < m.count(0); ++i)
        for (int j = 0; j <= m.count(1); ++j) {
            const std::array<int, 2> idx{i, j}, next{i + 1, j};
            const double expected = (u.at(next) - u.at(idx)) / h1;
            const double x = m.coordinate(0, i) + 0.5 * h1;
            const double y = j < m.count(1) ? m.coordinate(1, j) + eps * h2
                                            : m.coordinate(1, j) - eps * h2;
            CHECK(interp.gradient(x, y).first == doctest::Approx(expected).epsilon(1e-9));
        }
    // Axis-2 edges.
    for (int i = 0; i <= m.count(0); ++i)
        for (int j = 0; j < m.count(1); ++j) {
            const std::array<int, 2> idx{i, j}, next{i, j + 1};
            const double expected = (u.at(next) - u.at(idx)) / h2;
            const double y = m.coordinate(1, j) + 0.5 * h2;
            const double x = i < m.count(0) ? m.coordinate(0, i) + eps * h1
                                            : m.coordinate(0, i) - eps * h1;
            CHECK(interp.gradient(x, y).second == doctest::Approx(expected).epsilon(1e-9));
        }
}

TEST_CASE("power integral of constants") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {3, 3});
    GridFunction one(m);
    for (double& v : one.values()) v = 1.0;
    for (int p = 1; p <= 4; ++p)
        CHECK(powerIntegral(interpolate(one), p) == doctest::Approx(1.0).epsilon(1e-13));

    Mesh cell(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {2, 2});
    GridFunction two(cell);
    for (double& v : two.values()) v = 2.0;
    CHECK(powerIntegral(interpolate(two), 2) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("power integral matches the refined quadrature oracle") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {8, 8});
    for (std::uint64_t seed : {7ull, 8ull}) {
        const GridFunction u = randomNonneg(m, seed);
        const auto interp = interpolate(u);
        for (int p : {1, 2, 3, 5, 6}) {
            const double exact = powerIntegral(interp, p);
            const double quad = integratePowAbs(interp, p, 4);
            const double quadFiner = integratePowAbs(interp, p, 5);  // Richardson check
            CHECK(exact == doctest::Approx(quad).epsilon(1e-9));
            CHECK(std::abs(quadFiner - quad) <= 1e-9 * std::abs(quad));
        }
    }
}

TEST_CASE("power integral sandwich") {
    Mesh m(BoxDomain({0.0, 0.0}, {2.0, 1.0}), {6, 5});
    for (std::uint64_t seed : {9ull, 10ull, 11ull}) {
        const GridFunction u = randomNonneg(m, seed);
        const auto interp = interpolate(u);
        for (int p = 1; p <= 6; ++p) {
            double sum = 0.0;
            for (double v : u.values()) sum += std::pow(v, p);
            sum *= m.cellVolume();
            const double integral = powerIntegral(interp, p);
            CHECK(integral >= sum / (8.0 * p * p) * (1.0 - 1e-12));
            CHECK(integral <= 8.0 * sum * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("gradient energy never exceeds the discrete energy") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {7, 6});
    GridFunction c(m);
    for (double& v : c.values()) v = 4.0;
    CHECK(gradientEnergy(interpolate(c)) == 0.0);

    GridFunction x1(m);
    visitAll(m, [&](std::span<const int> idx) { x1.at(idx) = m.coordinate(0, idx[0]); });
    const double d = normD(x1);
    CHECK(gradientEnergy(interpolate(x1)) == doctest::Approx(1.0).epsilon(1e-13));  // |Omega| = 1
    // The discrete energy counts the unit slope on all N2+1 rows, so it
    // sits a factor (N2+1)/N2 above the integral and approaches it from
    // above under refinement.
    CHECK(d * d == doctest::Approx(7.0 / 6.0).epsilon(1e-13));
    CHECK(gradientEnergy(interpolate(x1)) <= d * d);

    for (std::uint64_t seed : {12ull, 13ull, 14ull}) {
        const GridFunction u = randomSigned(m, seed);
        const double dd = normD(u);
        CHECK(gradientEnergy(interpolate(u)) <= dd * dd * (1.0 + 1e-12));
    }
}

TEST_CASE("norm additivity over a four-way split") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {8, 8});
    for (std::uint64_t seed : {15ull, 16ull, 17ull}) {
        const GridFunction u = randomSigned(m, seed);
        double lpParts = 0.0, dParts = 0.0;
        const double p = 3.0;
        for (int qx = 0; qx < 2; ++qx)
            for (int qy = 0; qy < 2; ++qy) {
                Mesh sub(BoxDomain({0.5 * qx, 0.5 * qy}, {0.5 * qx + 0.5, 0.5 * qy + 0.5}),
                         {4, 4});
                GridFunction restricted(sub);
                visitAll(sub, [&](std::span<const int> idx) {
                    const std::array<int, 2> parent{idx[0] + 4 * qx, idx[1] + 4 * qy};
                    restricted.at(idx) = u.at(parent);
                });
                lpParts += std::pow(normLp(restricted, p), p);
                const double d = normD(restricted);
                dParts += d * d;
            }
        const double lpWhole = std::pow(normLp(u, p), p);
        const double dWhole = normD(u) * normD(u);
        CHECK(lpParts >= lpWhole * (1.0 - 1e-12));
        CHECK(lpParts <= 4.0 * lpWhole * (1.0 + 1e-12));
        CHECK(dParts >= dWhole * (1.0 - 1e-12));
        CHECK(dParts <= 2.0 * dWhole * (1.0 + 1e-12));
    }
}

TEST_CASE("rectangle estimate") {
    Mesh unit(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {6, 6});
    GridFunction zero(unit);
    const auto [l0, r0] = rectangleEstimateCheck(zero, 2.0);
    CHECK(l0 == 0.0);
    CHECK(r0 == 0.0);

    GridFunction one(unit);
    for (double& v : one.values()) v = 1.0;
    const auto [l1, r1] = rectangleEstimateCheck(one, 2.0);
    CHECK(l1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r1 == doctest::Approx(16.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(l1 <= r1);

    Mesh rect(BoxDomain({0.0, 0.0}, {1.25, 2.0}), {5, 8});
    for (std::uint64_t seed : {18ull, 19ull}) {
        const GridFunction u = randomSigned(rect, seed);
        for (double q : {1.0, 2.0, 4.0}) {
            const auto [lhs, rhs] = rectangleEstimateCheck(u, q);
            CHECK(lhs <= rhs);
        }
    }
}

TEST_CASE("contract violations are rejected") {
    Mesh line(BoxDomain({0.0}, {1.0}), {4});
    CHECK_THROWS_AS(interpolate(GridFunction(line)), std::invalid_argument);

    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {3, 3});
    GridFunction neg(m);
    neg[0] = -1.0;
    CHECK_THROWS_AS(powerIntegral(interpolate(neg), 2), std::invalid_argument);

    Mesh tiny(BoxDomain({0.0, 0.0}, {0.5, 1.0}), {2, 2});
    CHECK_THROWS_AS(rectangleEstimateCheck(GridFunction(tiny), 2.0), std::invalid_argument);
}
