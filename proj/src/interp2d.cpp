#include "fdbvp/interp2d.hpp"

#include "fdbvp/inequalities.hpp"
#include "fdbvp/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdbvp {

namespace {

struct CellCorners {
    double a, b, c, d;  // u(A), u(B), u(C), u(D)
};

// Corner values of cell (i, j): A at index (i, j), B at (i+1, j),
// C at (i, j+1), D at (i+1, j+1); axis 0 is x1, axis 1 is x2.
CellCorners corners(const GridFunction& u, int i, int j) {
    const std::array<int, 2> ia{i, j}, ib{i + 1, j}, ic{i, j + 1}, id{i + 1, j + 1};
    return {u.at(ia), u.at(ib), u.at(ic), u.at(id)};
}

template <typename Fn>
void forEachCell(const Mesh& mesh, Fn&& fn) {
    for (int i = 0; i < mesh.count(0); ++i)
        for (int j = 0; j < mesh.count(1); ++j) fn(i, j);
}

}  // namespace

TriangulatedInterpolant::TriangulatedInterpolant(GridFunction u) : nodal_(std::move(u)) {
    if (nodal_.mesh().dim() != 2)
        throw std::invalid_argument("TriangulatedInterpolant: needs a 2d mesh");
}

TriangulatedInterpolant interpolate(const GridFunction& u) { return TriangulatedInterpolant(u); }

double TriangulatedInterpolant::value(double x1, double x2) const {
    const Mesh& m = mesh();
    const double h1 = m.spacing(0), h2 = m.spacing(1);
    int i = static_cast<int>(std::floor((x1 - m.domain().lower(0)) / h1));
    int j = static_cast<int>(std::floor((x2 - m.domain().lower(1)) / h2));
    i = std::clamp(i, 0, m.count(0) - 1);
    j = std::clamp(j, 0, m.count(1) - 1);
    const double t1 = x1 - m.coordinate(0, i);
    const double t2 = x2 - m.coordinate(1, j);
    const CellCorners cc = corners(nodal_, i, j);
    if (t1 / h1 >= t2 / h2)  // T1, below the A-D diagonal
        return cc.a + t1 * (cc.b - cc.a) / h1 + t2 * (cc.d - cc.b) / h2;
    return cc.a + t1 * (cc.d - cc.c) / h1 + t2 * (cc.c - cc.a) / h2;
}

std::pair<double, double> TriangulatedInterpolant::gradient(double x1, double x2) const {
    const Mesh& m = mesh();
    const double h1 = m.spacing(0), h2 = m.spacing(1);
    int i = static_cast<int>(std::floor((x1 - m.domain().lower(0)) / h1));
    int j = static_cast<int>(std::floor((x2 - m.domain().lower(1)) / h2));
    i = std::clamp(i, 0, m.count(0) - 1);
    j = std::clamp(j, 0, m.count(1) - 1);
    const double t1 = x1 - m.coordinate(0, i);
    const double t2 = x2 - m.coordinate(1, j);
    const CellCorners cc = corners(nodal_, i, j);
    if (t1 / h1 >= t2 / h2) return {(cc.b - cc.a) / h1, (cc.d - cc.b) / h2};
    return {(cc.d - cc.c) / h1, (cc.c - cc.a) / h2};
}

double powerIntegral(const TriangulatedInterpolant& interp, int p) {
    if (p < 1) throw std::invalid_argument("powerIntegral: requires p >= 1");
    const GridFunction& u = interp.nodal();
    for (double v : u.values())
        if (v < 0.0) throw std::invalid_argument("powerIntegral: requires u >= 0");
    const Mesh& m = interp.mesh();
    const double cellFactor = m.cellVolume() / ((p + 1.0) * (p + 2.0));
    double acc = 0.0;
    forEachCell(m, [&](int i, int j) {
        const CellCorners cc = corners(u, i, j);
        acc += tripleTerm(cc.a, cc.b, cc.d, p) + tripleTerm(cc.a, cc.c, cc.d, p);
    });
    return acc * cellFactor;
}

double gradientEnergy(const TriangulatedInterpolant& interp) {
    const GridFunction& u = interp.nodal();
    const Mesh& m = interp.mesh();
    const double h1 = m.spacing(0), h2 = m.spacing(1);
    double acc = 0.0;
    forEachCell(m, [&](int i, int j) {
        const CellCorners cc = corners(u, i, j);
        const double d1A = (cc.b - cc.a) / h1, d1C = (cc.d - cc.c) / h1;
        const double d2A = (cc.c - cc.a) / h2, d2B = (cc.d - cc.b) / h2;
        acc += d1A * d1A + d1C * d1C + d2A * d2A + d2B * d2B;
    });
    return acc * m.cellVolume() / 2.0;
}

namespace {

// Degree-5 symmetric 7-point rule in barycentric coordinates.
struct QuadNode {
    double l1, l2, l3, w;
};

constexpr double kW1 = 0.225;
constexpr double kA2 = 0.059715871789770;  // (6 - sqrt(15))/21-family interior nodes
constexpr double kB2 = 0.470142064105115;
constexpr double kW2 = 0.132394152788506;
constexpr double kA3 = 0.797426985353087;
constexpr double kB3 = 0.101286507323456;
constexpr double kW3 = 0.125939180544827;

constexpr std::array<QuadNode, 7> kTriRule{{{1.0 / 3, 1.0 / 3, 1.0 / 3, kW1},
                                            {kA2, kB2, kB2, kW2},
                                            {kB2, kA2, kB2, kW2},
                                            {kB2, kB2, kA2, kW2},
                                            {kA3, kB3, kB3, kW3},
                                            {kB3, kA3, kB3, kW3},
                                            {kB3, kB3, kA3, kW3}}};

struct Tri {
    std::array<double, 2> v0, v1, v2;
};

double triArea(const Tri& t) {
    return 0.5 * std::abs((t.v1[0] - t.v0[0]) * (t.v2[1] - t.v0[1]) -
                          (t.v2[0] - t.v0[0]) * (t.v1[1] - t.v0[1]));
}

template <typename F>
double quadTriangle(const Tri& t, F&& f, int levels) {
    if (levels == 0) {
        double acc = 0.0;
        for (const auto& node : kTriRule) {
            const double x = node.l1 * t.v0[0] + node.l2 * t.v1[0] + node.l3 * t.v2[0];
            const double y = node.l1 * t.v0[1] + node.l2 * t.v1[1] + node.l3 * t.v2[1];
            acc += node.w * f(x, y);
        }
        return acc * triArea(t);
    }
    const std::array<double, 2> m01{0.5 * (t.v0[0] + t.v1[0]), 0.5 * (t.v0[1] + t.v1[1])};
    const std::array<double, 2> m12{0.5 * (t.v1[0] + t.v2[0]), 0.5 * (t.v1[1] + t.v2[1])};
    const std::array<double, 2> m20{0.5 * (t.v2[0] + t.v0[0]), 0.5 * (t.v2[1] + t.v0[1])};
    return quadTriangle({t.v0, m01, m20}, f, levels - 1) +
           quadTriangle({m01, t.v1, m12}, f, levels - 1) +
           quadTriangle({m20, m12, t.v2}, f, levels - 1) +
           quadTriangle({m01, m12, m20}, f, levels - 1);
}

}  // namespace

double integratePowAbs(const TriangulatedInterpolant& interp, double q, int refineLevels) {
    const Mesh& m = interp.mesh();
    const double h1 = m.spacing(0), h2 = m.spacing(1);
    auto f = [&](double x, double y) { return std::pow(std::abs(interp.value(x, y)), q); };
    double acc = 0.0;
    forEachCell(m, [&](int i, int j) {
        const double x0 = m.coordinate(0, i), y0 = m.coordinate(1, j);
        const Tri t1{{x0, y0}, {x0 + h1, y0}, {x0 + h1, y0 + h2}};
        const Tri t2{{x0, y0}, {x0, y0 + h2}, {x0 + h1, y0 + h2}};
        acc += quadTriangle(t1, f, refineLevels) + quadTriangle(t2, f, refineLevels);
    });
    return acc;
}

std::pair<double, double> rectangleEstimateCheck(const GridFunction& u, double q) {
    if (u.mesh().dim() != 2)
        throw std::invalid_argument("rectangleEstimateCheck: needs a 2d mesh");
    if (!(q >= 1.0)) throw std::invalid_argument("rectangleEstimateCheck: requires q >= 1");
    const BoxDomain& dom = u.mesh().domain();
    const double e1 = dom.edge(0), e2 = dom.edge(1);
    if (e1 < 1.0 || e1 > 2.0 || e2 < 1.0 || e2 > 2.0)
        throw std::invalid_argument("rectangleEstimateCheck: edge lengths must lie in [1,2]");
    const TriangulatedInterpolant interp = interpolate(u);
    const double lhs = integratePowAbs(interp, q, 4);

    // Continuum W^{1,2} norm of the interpolant: the p = 2 triangle closed
    // form is a polynomial identity, valid for any sign of u.
    const Mesh& m = u.mesh();
    double l2sq = 0.0;
    forEachCell(m, [&](int i, int j) {
        const std::array<int, 2> ia{i, j}, ib{i + 1, j}, ic{i, j + 1}, id{i + 1, j + 1};
        l2sq += tripleTerm(u.at(ia), u.at(ib), u.at(id), 2) +
                tripleTerm(u.at(ia), u.at(ic), u.at(id), 2);
    });
    l2sq *= m.cellVolume() / 12.0;
    const double w12 = std::sqrt(l2sq + gradientEnergy(interp));

    const double vol = dom.volume();
    const double sqrtPi = std::sqrt(std::numbers::pi);
    const double front =
        std::max({2.0 * sqrtPi * e1 / e2, 2.0 * sqrtPi * e2 / e1, 2.0 / std::sqrt(vol)});
    const double rhs =
        std::pow(front, q) * vol * std::pow(1.0 + q / 2.0, 1.0 + q / 2.0) * std::pow(w12, q);
    return {lhs, rhs};
}

}  // namespace fdbvp
