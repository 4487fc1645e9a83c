#include "fdbvp/boundsnd.hpp"

#include "fdbvp/calculus.hpp"
#include "fdbvp/inequalities.hpp"
#include "fdbvp/norms.hpp"
#include "fdbvp/random_fields.hpp"
#include "fdbvp/solver.hpp"
#include "fdbvp/spectral.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

using namespace fdbvp;

TEST_CASE("moser parameter arithmetic") {
    MoserParams p3{3, 3.0, 0.0};
    p3.validate();
    CHECK(p3.qPrime() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p3.l() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(p3.kExponent() == doctest::Approx(4.0).epsilon(1e-14));

    MoserParams p2{2, 4.0, 3.0};
    p2.validate();
    CHECK(p2.l() == doctest::Approx(2.25).epsilon(1e-14));

    const MoserParams smallQ3{3, 1.4, 0.0};
    const MoserParams smallQ2{2, 1.4, 3.0};
    const MoserParams flatNHat{2, 4.0, 2.0};
    CHECK_THROWS_AS(smallQ3.validate(), std::invalid_argument);
    CHECK_THROWS_AS(smallQ2.validate(), std::invalid_argument);
    CHECK_THROWS_AS(flatNHat.validate(), std::invalid_argument);
}

TEST_CASE("moser K on reference inputs") {
    const BoxDomain unit3({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    const MoserParams params{3, 3.0, 0.0};
    // max{2, C_S(3) sqrt 2}^4 with C_S(3) sqrt 2 = 8 sqrt(2/3) = 6.53197...
    CHECK(moserK(params, 1.0, unit3) == doctest::Approx(1820.4444444444444).epsilon(1e-12));
    // Zero coefficient norm leaves only the exponent bookkeeping.
    CHECK(moserK(params, 0.0, unit3) == doctest::Approx(std::pow(2.0, 4.0)).epsilon(1e-13));
    CHECK(moserK(params, 0.0, unit3) >= 1.0);
    CHECK(std::pow(1.0, params.kExponent()) == 1.0);  // degenerate guard

    const BoxDomain unit2({0.0, 0.0}, {1.0, 1.0});
    const MoserParams params2{2, 4.0, 3.0};
    CHECK(std::isfinite(moserK(params2, 1.0, unit2)));
}

TEST_CASE("linear bound arithmetic") {
    const BoxDomain unit2({0.0, 0.0}, {1.0, 1.0});
    const MoserParams params{2, 4.0, 3.0};
    CHECK(linearLinfBound(params, 0.0, 0.0, 1.0, unit2) == 0.0);
    const double b1 = linearLinfBound(params, 0.5, 1.0, 1.0, unit2);
    const double b2 = linearLinfBound(params, 0.5, 2.0, 1.0, unit2);
    const double base = linearLinfBound(params, 0.5, 0.0, 1.0, unit2);
    CHECK(b2 - base == doctest::Approx(2.0 * (b1 - base)).epsilon(1e-12));
}

TEST_CASE("nonlinear K_u obeys its exponent contract") {
    const BoxDomain unit3({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    // p = 1.4 forces q = 6/(0.4) = 15 and q' = 15/14.
    MoserParams params{3, 15.0, 0.0};
    CHECK(params.qPrime() == doctest::Approx(15.0 / 14.0).epsilon(1e-14));
    CHECK(std::isfinite(nonlinearKu(params, 1.4, 1.0, 2.0, unit3)));
    CHECK(std::isfinite(nonlinearKu(params, 1.4, 1.0, 0.0, unit3)));
    MoserParams wrongQ{3, 14.0, 0.0};
    CHECK_THROWS_AS(nonlinearKu(wrongQ, 1.4, 1.0, 2.0, unit3), std::invalid_argument);
    MoserParams anyQ{3, 3.0, 0.0};
    CHECK_THROWS_AS(nonlinearKu(anyQ, 6.0, 1.0, 2.0, unit3), std::invalid_argument);

    const BoxDomain unit2({0.0, 0.0}, {1.0, 1.0});
    // n = 2, p = 1.5 requires q > max{1, 4} = 4.
    MoserParams ok2{2, 4.4, 2.2};
    CHECK(std::isfinite(nonlinearKu(ok2, 1.5, 1.0, 2.0, unit2)));
    MoserParams small2{2, 3.0, 2.2};
    CHECK_THROWS_AS(nonlinearKu(small2, 1.5, 1.0, 2.0, unit2), std::invalid_argument);
}

TEST_CASE("d-norm a priori exponents") {
    const BoxDomain unit2({0.0, 0.0}, {1.0, 1.0});
    const double lambda1 = continuumLambda1(unit2);
    const DNormBound d2 = dnormApriori(2, 1.5, 2.0 * lambda1, 1.0, 1.0, 1.0, unit2);
    CHECK(d2.pTilde == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(d2.beta == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(d2.alpha1 == doctest::Approx(3.25).epsilon(1e-15));
    CHECK(d2.alpha2 == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(d2.beta < 2.0);

    const BoxDomain unit3({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    const double lambda13 = continuumLambda1(unit3);
    const DNormBound d3 = dnormApriori(3, 1.2, 2.0 * lambda13, 1.0, 1.0, 1.0, unit3);
    CHECK(d3.pTilde == doctest::Approx(1.35).epsilon(1e-14));
    CHECK(d3.beta == doctest::Approx(1.05).epsilon(1e-14));
    CHECK(d3.alpha1 == doctest::Approx(2.55).epsilon(1e-14));
    CHECK(d3.alpha1 <= 2.0 * (3.0 - d3.beta));  // (2n - 2 beta)/(n - 2) at n = 3

    // Degenerate growth constants collapse the max to one.
    CHECK(dnormApriori(2, 1.5, 2.0 * lambda1, 0.0, 0.0, 0.0, unit2).dNormBound == 1.0);

    CHECK_THROWS_AS(dnormApriori(2, 1.5, 0.5 * lambda1, 1.0, 1.0, 1.0, unit2),
                    std::invalid_argument);
    CHECK_THROWS_AS(dnormApriori(2, 2.5, 2.0 * lambda1, 1.0, 1.0, 1.0, unit2),
                    std::invalid_argument);
    CHECK_THROWS_AS(dnormApriori(3, 1.6, 2.0 * lambda13, 1.0, 1.0, 1.0, unit3),
                    std::invalid_argument);
}

TEST_CASE("full n-d bound pipeline") {
    const BoxDomain unit2({0.0, 0.0}, {1.0, 1.0});
    const double lambda1 = continuumLambda1(unit2);
    const NDBoundReport report = aprioriBoundNd(2, 1.5, 2.0 * lambda1, 1.0, 1.0, 1.0, unit2);
    CHECK(std::isfinite(report.Mbar));
    CHECK(report.Mbar > 0.0);
    CHECK(report.q > report.nHat / 2.0);

    // All growth constants at zero: Mbar reduces to (2 K_u)^{q'} C_P.
    const NDBoundReport degenerate =
        aprioriBoundNd(2, 1.5, 2.0 * lambda1, 0.0, 0.0, 0.0, unit2);
    CHECK(degenerate.dNormBound == 1.0);
    CHECK(degenerate.Mbar == doctest::Approx(std::pow(2.0 * degenerate.Ku, degenerate.qPrime) *
                                             poincareUpper(unit2))
                                 .epsilon(1e-12));

    // Monotone in C2 and C3.
    double prev = 0.0;
    for (double c : {0.5, 1.0, 2.0, 4.0}) {
        const double m = aprioriBoundNd(2, 1.5, 2.0 * lambda1, 1.0, c, 1.0, unit2).Mbar;
        CHECK(m >= prev);
        prev = m;
    }
    prev = 0.0;
    for (double c : {0.5, 1.0, 2.0, 4.0}) {
        const double m = aprioriBoundNd(2, 1.5, 2.0 * lambda1, 1.0, 1.0, c, unit2).Mbar;
        CHECK(m >= prev);
        prev = m;
    }

    const BoxDomain unit3({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0});
    const NDBoundReport r3 =
        aprioriBoundNd(3, 1.2, 2.0 * continuumLambda1(unit3), 1.0, 1.0, 1.0, unit3);
    CHECK(std::isfinite(r3.Mbar));
    CHECK(r3.q == doctest::Approx(2.0 * 3.0 / (1.0 * 0.2)).epsilon(1e-12));
}

TEST_CASE("discrete interpolation inequality") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {10, 10});
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const GridFunction u = positivePart(randomUniformField(m, 1, rng));
        const double qPrime = 4.0 / 3.0;
        const double beta = 2.0 * qPrime;
        const double mu = (0.5 - 1.0 / beta) / (1.0 / beta);  // gamma = inf
        for (double eps : {0.1, 1.0}) {
            const double lhs = normLp(u, beta);
            const double rhs = eps * normLinf(u) + std::pow(eps, -mu) * normLp(u, 2.0);
            CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("test-function inequality for the positive part") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {8, 8});
    std::mt19937_64 rng(56);
    for (int trial = 0; trial < 10; ++trial) {
        GridFunction u(m);
        for (double& v : u.values()) v = uniformIn(rng, -1.0, 1.0);
        const GridFunction up = positivePart(u);
        for (int s : {0, 1, 2}) {
            GridFunction phi(m);
            for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = std::pow(up[i], 2 * s + 1);
            for (int axis = 0; axis < 2; ++axis) {
                const auto du = diff(u, axis, DiffDirection::Forward);
                const auto dup = diff(up, axis, DiffDirection::Forward);
                const auto dphi = diff(phi, axis, DiffDirection::Forward);
                for (std::size_t i = 0; i < du.values.size(); ++i) {
                    CHECK(du.values[i] * dphi.values[i] >=
                          dup.values[i] * dphi.values[i] - 1e-12);
                }
            }
        }
    }
}

TEST_CASE("moser trace on a solved linear instance") {
    Mesh m(BoxDomain({0.0, 0.0}, {1.0, 1.0}), {24, 24});
    GridFunction zeroShift(m), one(m);
    visitInterior(m, [&](std::span<const int> idx) { one.at(idx) = 1.0; });
    const GridFunction u = solveLinear(m, zeroShift, one);

    const MoserParams params{2, 4.0, 3.0};
    GridFunction a(m), b = one;
    const auto trace = moserIterationTrace(u, a, b, params, 8);
    REQUIRE(trace.size() == 9);
    CHECK(trace[0].tK == 1.0);
    for (std::size_t k = 0; k < trace.size(); ++k) {
        CHECK(trace[k].mK <= trace[k].mTildeK * (1.0 + 1e-12));
        if (k > 0) {
            CHECK(trace[k].tK == doctest::Approx(std::pow(params.l(), k)).epsilon(1e-12));
            CHECK(trace[k].mK >= trace[k - 1].mK - 1e-12);  // measure below one
        }
    }
    CHECK(trace.back().mK <= normLinf(positivePart(u)) * (1.0 + 1e-10));

    // The linear sup-norm bound dominates the measured solution.
    const double aNorm = coefficientNormLq(a, params.q);
    const double bound = linearLinfBound(params, normLp(u, 2.0), 1.0, aNorm, m.domain());
    CHECK(normLinf(u) <= bound);

    // Zero solves the homogeneous equation; the trace vanishes identically.
    GridFunction zero(m);
    GridFunction zeroB(m);
    for (const auto& pt : moserIterationTrace(zero, a, zeroB, params, 4)) {
        CHECK(pt.mK == 0.0);
        CHECK(pt.mTildeK == 0.0);
    }

    // A non-solution is rejected by the residual gate.
    GridFunction junk = u;
    junk[m.flatten(std::vector<int>{12, 12})] += 1.0;
    CHECK_THROWS_AS(moserIterationTrace(junk, a, b, params, 4), std::invalid_argument);
}
