#include "fdbvp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdbvp {

double normLp(const GridFunction& u, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("normLp: requires p >= 1");
    const double m = normLinf(u);
    if (m == 0.0) return 0.0;
    double acc = 0.0;
    for (double v : u.values()) acc += std::pow(std::abs(v) / m, p);
    acc *= u.mesh().cellVolume();
    return m * std::pow(acc, 1.0 / p);
}

double normLinf(const GridFunction& u) {
    double m = 0.0;
    for (double v : u.values()) m = std::max(m, std::abs(v));
    return m;
}

double normD(const GridFunction& u) {
    const Mesh& mesh = u.mesh();
    double acc = 0.0;
    for (int axis = 0; axis < mesh.dim(); ++axis) {
        const double invH = 1.0 / mesh.spacing(axis);
        std::vector<int> lo(mesh.dim(), 0), hi(mesh.counts());
        hi[axis] -= 1;
        std::vector<int> probe(mesh.dim(), 0);
        probe[axis] = 1;
        const std::size_t stride = mesh.flatten(probe);
        visitBox(lo, hi, [&](std::span<const int> idx) {
            const std::size_t flat = mesh.flatten(idx);
            const double d = (u[flat + stride] - u[flat]) * invH;
            acc += d * d;
        });
    }
    return std::sqrt(acc * mesh.cellVolume());
}

double normW12(const GridFunction& u) {
    const double l2 = normLp(u, 2.0);
    const double d = normD(u);
    return std::sqrt(l2 * l2 + d * d);
}

double orliczSum(const GridFunction& u, double k) {
    const double hvol = u.mesh().cellVolume();
    double acc = 0.0;
    for (double v : u.values()) {
        if (v == 0.0) continue;
        const double t = std::abs(v) / k;
        const double t2 = t * t;
        if (t2 > 700.0) return std::numeric_limits<double>::infinity();
        acc += std::expm1(t2) * hvol;
        if (acc > 1e6) return acc;  // only its position relative to 1 matters
    }
    return acc;
}

double normOrliczA(const GridFunction& u) {
    const double m = normLinf(u);
    if (m == 0.0) return 0.0;
    const double hvol = u.mesh().cellVolume();

    // A(t) >= t^2 gives orliczSum(||u||_L2) >= 1, so the L2 norm brackets
    // from below; the single-bump bound A(m/k)*suppCount*hvol <= 1 brackets
    // from above.
    double lo = normLp(u, 2.0);
    std::size_t suppCount = 0;
    for (double v : u.values())
        if (v != 0.0) ++suppCount;
    double hi = m / std::sqrt(std::log1p(1.0 / (hvol * static_cast<double>(suppCount))));
    while (orliczSum(u, lo) < 1.0 && lo > 1e-300) lo *= 0.5;
    while (orliczSum(u, hi) > 1.0 && hi < 1e300) hi *= 2.0;
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (orliczSum(u, mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double norm(const GridFunction& u, NormKind kind) {
    switch (kind.tag) {
        case NormKind::Tag::Lp: return normLp(u, kind.p);
        case NormKind::Tag::Linf: return normLinf(u);
        case NormKind::Tag::D: return normD(u);
        case NormKind::Tag::W12: return normW12(u);
        case NormKind::Tag::OrliczA: return normOrliczA(u);
    }
    throw std::logic_error("norm: unknown kind");
}

double weightedSum(const GridFunction& u, double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta >= 0.0))
        throw std::invalid_argument("weightedSum: requires alpha > 0, beta >= 0");
    const Mesh& mesh = u.mesh();
    double acc = 0.0;
    visitInterior(mesh, [&](std::span<const int> idx) {
        const double v = std::abs(u.at(idx));
        if (v == 0.0) return;
        double term = std::pow(v, alpha);
        if (beta > 0.0) term /= std::pow(mesh.distToBoundary(idx), beta);
        acc += term;
    });
    return acc * mesh.cellVolume();
}

GridFunction positivePart(const GridFunction& u) {
    GridFunction out = u;
    for (double& v : out.values()) v = std::max(v, 0.0);
    return out;
}

GridFunction negativePart(const GridFunction& u) {
    GridFunction out = u;
    for (double& v : out.values()) v = std::min(v, 0.0);
    return out;
}

}  // namespace fdbvp
