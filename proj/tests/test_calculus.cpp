#include "fdbvp/calculus.hpp"

#include "fdbvp/norms.hpp"
#include "fdbvp/random_fields.hpp"

#include <doctest.h>

#include <stdexcept>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

using namespace fdbvp;

namespace {

GridFunction randomValues(const Mesh& m, std::uint64_t seed) {
    GridFunction u(m);
    std::mt19937_64 rng(seed);
    for (double& v : u.values()) v = uniformIn(rng, -1.0, 1.0);
    return u;
}

}  // namespace

TEST_CASE("difference quotients on simple data") {
    Mesh m(BoxDomain({0.0}, {1.0}), {2});
    GridFunction u(m, {0.0, 1.0, 0.0});
    const auto fwd = diff(u, 0, DiffDirection::Forward);
    REQUIRE(fwd.values.size() == 2);
    CHECK(fwd.values[0] == 2.0);
    CHECK(fwd.values[1] == -2.0);
    const std::array<int, 1> base{0};
    CHECK(fwd.at(base) == 2.0);
    const auto bwd = diff(u, 0, DiffDirection::Backward);
    REQUIRE(bwd.values.size() == 2);
    CHECK(bwd.values[0] == 2.0);
    CHECK(bwd.values[1] == -2.0);
    const std::array<int, 1> at1{1}, at2{2};
    CHECK(bwd.at(at1) == 2.0);
    CHECK(bwd.at(at2) == -2.0);
}

TEST_CASE("difference of a constant vanishes, of the identity is one") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 2.0}), {4, 5});
    GridFunction c(m);
    for (double& v : c.values()) v = 3.5;
    for (int axis = 0; axis < 2; ++axis) {
        for (double v : diff(c, axis, DiffDirection::Forward).values) CHECK(v == 0.0);
        for (double v : diff(c, axis, DiffDirection::Backward).values) CHECK(v == 0.0);
    }
    GridFunction x0(m);
    visitAll(m, [&](std::span<const int> idx) { x0.at(idx) = m.coordinate(0, idx[0]); });
    for (double v : diff(x0, 0, DiffDirection::Forward).values)
        CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("laplacian of a constant vanishes") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {3, 3});
    GridFunction c(m);
    for (double& v : c.values()) v = -2.0;
    const GridFunction lap = discreteLaplacian(c);
    for (double v : lap.values()) CHECK(v == 0.0);
}

TEST_CASE("single-interior-point stencil") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {2, 2});
    GridFunction u(m);
    const std::array<int, 2> center{1, 1};
    u.at(center) = 1.0;
    const GridFunction lap = discreteLaplacian(u);
    CHECK(-lap.at(center) == 16.0);
}

TEST_CASE("second differences of quadratics are exact") {
    Mesh m(BoxDomain({-1.0}, {2.0}), {12});
    GridFunction u(m);
    visitAll(m, [&](std::span<const int> idx) {
        const double x = m.coordinate(0, idx[0]);
        u.at(idx) = x * x;
    });
    const GridFunction lap = discreteLaplacian(u);
    visitInterior(m, [&](std::span<const int> idx) {
        CHECK(lap.at(idx) == doctest::Approx(2.0).epsilon(1e-12));
    });
}

TEST_CASE("weak form vanishes for trivial data and detects perturbations") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {4, 4});
    GridFunction zero(m);
    const std::array<int, 2> node{2, 2};
    CHECK(weakFormResidual(zero, zero, pointMass(m, node)) == 0.0);

    const GridFunction u = randomValues(m, 11);
    GridFunction f = discreteLaplacian(u);
    for (double& v : f.values()) v = -v;
    visitInterior(m, [&](std::span<const int> idx) {
        const GridFunction phi = pointMass(m, idx);
        const double r = weakFormResidual(u, f, phi);
        const double scale = weakFormScale(u, f, phi);
        CHECK(std::abs(r) <= 1e-12 * scale);
    });

    GridFunction fBad = f;
    fBad.at(node) += 1.0;
    CHECK(weakFormResidual(u, fBad, pointMass(m, node)) ==
          doctest::Approx(-m.cellVolume()).epsilon(1e-10));
}

TEST_CASE("weak-form equivalence runs both ways") {
    Mesh m(BoxDomain({0.0}, {1.0}), {6});
    const GridFunction u = randomValues(m, 3);
    GridFunction f = discreteLaplacian(u);
    for (double& v : f.values()) v = -v;
    GridFunction g = f;
    const std::array<int, 1> node{3};
    g.at(node) += 0.25;  // g != -Delta_h u at one node
    bool allVanishF = true, allVanishG = true;
    visitInterior(m, [&](std::span<const int> idx) {
        const GridFunction phi = pointMass(m, idx);
        const double scale = std::max(weakFormScale(u, f, phi), 1e-30);
        if (std::abs(weakFormResidual(u, f, phi)) > 1e-12 * scale) allVanishF = false;
        if (std::abs(weakFormResidual(u, g, phi)) > 1e-12 * scale) allVanishG = false;
    });
    CHECK(allVanishF);
    CHECK(!allVanishG);
}

TEST_CASE("test functions with boundary support are rejected") {
    Mesh m(BoxDomain({0.0}, {1.0}), {4});
    GridFunction phi(m);
    phi[0] = 1.0;
    GridFunction zero(m);
    CHECK_THROWS_AS(weakFormResidual(zero, zero, phi), std::invalid_argument);
}

TEST_CASE("product rules hold to machine precision") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.5}), {5, 4});
    const GridFunction u = randomValues(m, 21), v = randomValues(m, 22);
    GridFunction uv(m);
    for (std::size_t i = 0; i < uv.size(); ++i) uv[i] = u[i] * v[i];
    for (int axis = 0; axis < 2; ++axis) {
        const auto duvB = diff(uv, axis, DiffDirection::Backward);
        const auto duB = diff(u, axis, DiffDirection::Backward);
        const auto dvB = diff(v, axis, DiffDirection::Backward);
        const auto duvF = diff(uv, axis, DiffDirection::Forward);
        const auto duF = diff(u, axis, DiffDirection::Forward);
        const auto dvF = diff(v, axis, DiffDirection::Forward);
        std::vector<int> lo(2, 0), hi(m.counts());
        lo[axis] = 1;
        visitBox(lo, hi, [&](std::span<const int> idx) {
            std::vector<int> prev(idx.begin(), idx.end());
            prev[axis] -= 1;
            const double lhs = duvB.at(idx);
            const double rhs = v.at(idx) * duB.at(idx) + u.at(prev) * dvB.at(idx);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        });
        std::vector<int> lo2(2, 0), hi2(m.counts());
        hi2[axis] -= 1;
        visitBox(lo2, hi2, [&](std::span<const int> idx) {
            std::vector<int> next(idx.begin(), idx.end());
            next[axis] += 1;
            const double lhs = duvF.at(idx);
            const double rhs = v.at(idx) * duF.at(idx) + u.at(next) * dvF.at(idx);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        });
    }
}

TEST_CASE("summation rule for compactly supported functions") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {6, 7});
    std::mt19937_64 rng(5);
    const GridFunction w = randomUniformField(m, 1, rng);
    for (int axis = 0; axis < 2; ++axis) {
        double sumF = 0.0, sumB = 0.0;
        for (double v : diff(w, axis, DiffDirection::Forward).values) sumF += v;
        for (double v : diff(w, axis, DiffDirection::Backward).values) sumB += v;
        CHECK(std::abs(sumF * m.spacing(axis)) < 1e-13);
        CHECK(std::abs(sumB * m.spacing(axis)) < 1e-13);
    }
}

TEST_CASE("laplacian consistency order is at least 1.9") {
    const auto maxError = [](int N) {
        Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {N, N});
        GridFunction u(m);
        visitAll(m, [&](std::span<const int> idx) {
            u.at(idx) = std::sin(std::numbers::pi * m.coordinate(0, idx[0])) *
                        std::sin(std::numbers::pi * m.coordinate(1, idx[1]));
        });
        const GridFunction lap = discreteLaplacian(u);
        double worst = 0.0;
        visitInterior(m, [&](std::span<const int> idx) {
            const double exact = -2.0 * std::numbers::pi * std::numbers::pi * u.at(idx);
            worst = std::max(worst, std::abs(lap.at(idx) - exact));
        });
        return worst;
    };
    const double e16 = maxError(16), e32 = maxError(32);
    const double order = std::log2(e16 / e32);
    CHECK(order >= 1.9);
}
