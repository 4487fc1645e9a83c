#include "fdbvp/bounds1d.hpp"

#include "fdbvp/calculus.hpp"
#include "fdbvp/random_fields.hpp"
#include "fdbvp/spectral.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

using namespace fdbvp;

namespace {

// Test-side tridiagonal solve of (-D+D- - lambda0) w = rhs on the interior
// with prescribed boundary values; independent of the library's solvers.
GridFunction thomasSolve(const Mesh& mesh, double lambda0, const std::vector<double>& rhs,
                         double wa, double wb) {
    const int N = mesh.count(0);
    const double invH2 = 1.0 / (mesh.spacing(0) * mesh.spacing(0));
    const int m = N - 1;
    std::vector<double> a(m, -invH2), b(m, 2.0 * invH2 - lambda0), c(m, -invH2), d(rhs);
    d[0] += invH2 * wa;
    d[m - 1] += invH2 * wb;
    for (int i = 1; i < m; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    std::vector<double> x(m);
    x[m - 1] = d[m - 1] / b[m - 1];
    for (int i = m - 2; i >= 0; --i) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
    GridFunction w(mesh);
    w[0] = wa;
    w[static_cast<std::size_t>(N)] = wb;
    for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i + 1)] = x[i];
    return w;
}

// Exact antiderivative for g(s) = s^3 + 1 anchored at K = 1.
double Gexact(double s) { return (s * s * s * s - 1.0) / 4.0 + (s - 1.0); }

}  // namespace

TEST_CASE("growth bookkeeping") {
    const Growth1D g = Growth1D::cubicPlusOne();
    g.validate();
    for (double s : {0.0, 0.5, 1.0, 2.0, 5.0, 20.0})
        CHECK(g.G(s) == doctest::Approx(Gexact(s)).epsilon(1e-11));
    // G(Rt) <= t G(R) on sampled pairs.
    for (double R : {2.0, 5.0, 40.0})
        for (double t : {0.1, 0.3, 0.7, 0.95})
            CHECK(g.G(R * t) <= t * g.G(R) + 1e-10);
    CHECK_THROWS_AS(Growth1D([](double) { return 1.0; }, 1.0).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Growth1D([](double s) { return s; }, 1.0).validate(), std::invalid_argument);
}

TEST_CASE("comparison principle on explicit data") {
    Mesh m(BoxDomain({0.0}, {1.0}), {16});
    GridFunction zero(m);
    CHECK(comparisonHolds(zero, 0.0));

    const EigenPair pair = firstEigenpair(m);
    GridFunction minusPhi = pair.phi;
    for (double& v : minusPhi.values()) v = -v;
    CHECK(comparisonCheck(minusPhi, 0.0) == ComparisonOutcome::Holds);

    // w = +phi fails the differential inequality for lambda0 < lambda1h.
    CHECK(comparisonCheck(pair.phi, 0.5 * pair.lambda1h) ==
          ComparisonOutcome::HypothesisViolated);
    CHECK_THROWS_AS(comparisonHolds(pair.phi, 0.5 * pair.lambda1h), std::invalid_argument);

    // lambda0 >= lambda1h is itself a hypothesis violation.
    CHECK(comparisonCheck(zero, pair.lambda1h) == ComparisonOutcome::HypothesisViolated);
}

TEST_CASE("comparison principle on randomly constructed subsolutions") {
    Mesh m(BoxDomain({0.0}, {1.0}), {24});
    const double lambda1h = firstEigenpair(m).lambda1h;
    std::mt19937_64 rng(100);
    for (int trial = 0; trial < 1000; ++trial) {
        const double lambda0 = uniformIn(rng, 0.0, 0.9) * lambda1h;
        std::vector<double> rhs(23);
        for (double& v : rhs) v = -uniformIn(rng, 0.0, 2.0);  // -r with r >= 0
        const double wa = -uniformIn(rng, 0.0, 1.0), wb = -uniformIn(rng, 0.0, 1.0);
        const GridFunction w = thomasSolve(m, lambda0, rhs, wa, wb);
        CHECK(comparisonCheck(w, lambda0) == ComparisonOutcome::Holds);
    }
}

TEST_CASE("poisson closed form") {
    // gamma = 0, A = 0 gives the zero solution.
    const GridFunction v0 = poissonClosedForm(0.0, 1.0, 0.25, 0.0, 0.0);
    for (double v : v0.values()) CHECK(v == 0.0);

    // gamma = 1, A = 0: v(x) = cos(pi x / 2) at the nodes.
    const GridFunction v1 = poissonClosedForm(0.0, 1.0, 0.25, 1.0, 0.0);
    for (int k = 0; k <= 4; ++k)
        CHECK(v1[static_cast<std::size_t>(k)] ==
              doctest::Approx(std::cos(std::numbers::pi * k / 8.0)).epsilon(1e-13));

    // gamma = 0, A = mu: v(b) = 0 via cos(pi/2) = 0, sin(pi/2) = 1.
    const double mu = poissonMu(0.0, 1.0, 0.25);
    const GridFunction v2 = poissonClosedForm(0.0, 1.0, 0.25, 0.0, mu);
    CHECK(v2[4] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(v2[0] == 0.0);

    CHECK_THROWS_AS(poissonClosedForm(0.0, 1.0, 0.3, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(poissonClosedForm(0.0, 1.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("poisson closed form satisfies its equation across scales") {
    const auto checkInterval = [](double a, double b, double h) {
        const double width = b - a;
        for (double gamma : {0.0, 1.0, 10.0})
            for (double A : {0.0, 1.0, 10.0}) {
                const GridFunction v = poissonClosedForm(a, b, h, gamma, A);
                const Mesh& m = v.mesh();
                const double mu = poissonMu(a, b, h);
                const double invH2 = 1.0 / (h * h);
                const GridFunction lap = discreteLaplacian(v);
                visitInterior(m, [&](std::span<const int> idx) {
                    const std::size_t i = m.flatten(idx);
                    const double res = -lap[i] - mu * v[i] + A;
                    const double scale =
                        (std::abs(v[i + 1]) + 2.0 * std::abs(v[i]) + std::abs(v[i - 1])) * invH2 +
                        std::abs(mu * v[i]) + A;
                    CHECK(std::abs(res) <= 1e-12 * scale);
                });
                // Forward-difference bound at the left endpoint.
                const double dv = (v[1] - v[0]) / h;
                CHECK(-dv <= (gamma + width * width * A) * std::numbers::pi / (2.0 * width) +
                          1e-12);
                // mu stays below the first eigenvalue on the interval.
                CHECK(mu < firstEigenpair(m).lambda1h);
            }
    };
    for (int logH = 2; logH <= 10; ++logH) checkInterval(0.0, 1.0, std::ldexp(1.0, -logH));
    checkInterval(1.0, 3.0, 0.125);  // non-unit interval
}

TEST_CASE("linear minorant for the cubic growth") {
    const Growth1D g = Growth1D::cubicPlusOne();
    const auto f = [](double, double s) { return s * s * s + 1.0; };
    const auto [A, K1] = linearMinorant(f, g, 1.0);
    // g(s) >= pi^2 s from the largest root of s^3 - pi^2 s + 1 on.
    CHECK(K1 >= 3.089);
    CHECK(K1 <= 3.1);
    // A = max (pi^2 s - s^3 - 1)+ attained at s = sqrt(pi^2/3).
    CHECK(A == doctest::Approx(10.934321458626076).epsilon(1e-6));
}

TEST_CASE("kappa tail integral against its certified bound") {
    const Growth1D g = Growth1D::cubicPlusOne();
    {
        const auto [integral, bound] = kappaTailCheck(g, 2.0);
        CHECK(bound == doctest::Approx(4.0 / std::sqrt(4.75)).epsilon(1e-12));
        CHECK(integral == doctest::Approx(1.176170172411).epsilon(1e-6));
        CHECK(integral <= bound);
    }
    {
        const auto [integral, bound] = kappaTailCheck(g, 10.0);
        CHECK(bound == doctest::Approx(0.399301832157).epsilon(1e-9));
        CHECK(integral == doctest::Approx(0.261944024362).epsilon(1e-6));
        CHECK(integral <= bound);
    }
    {
        // Just above K both sides stay finite.
        const auto [integral, bound] = kappaTailCheck(g, 1.01);
        CHECK(std::isfinite(integral));
        CHECK(std::isfinite(bound));
        CHECK(integral <= bound);
    }
    CHECK_THROWS_AS(kappaTailCheck(g, 0.5), std::invalid_argument);
}

TEST_CASE("a priori bound for the cubic model problem") {
    const Growth1D g = Growth1D::cubicPlusOne();
    const auto f = [](double, double s) { return s * s * s + 1.0; };
    const Bound1DReport report = aprioriBound1d(f, g, 1.0);
    CHECK(report.lambda0 == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-14));
    // Independent root-finding oracle values for the two thresholds.
    CHECK(report.R1 == doctest::Approx(7.9735176785538915).epsilon(1e-8));
    CHECK(report.Rbound == doctest::Approx(40.63319520965857).epsilon(1e-8));
    CHECK(report.Mbar ==
          doctest::Approx(2.0 * std::max(report.R1, report.Rbound) + report.A / 16.0)
              .epsilon(1e-14));
    CHECK(report.Mbar > 2.0 * g.K());

    // Shrinking L raises the bound.
    const double m1 = report.Mbar;
    const double m2 = aprioriBound1d(f, g, 0.5).Mbar;
    const double m3 = aprioriBound1d(f, g, 0.25).Mbar;
    CHECK(m2 > m1);
    CHECK(m3 > m2);
}
