#include "fdbvp/spectral.hpp"

#include "fdbvp/linalg.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fdbvp {

namespace {
constexpr double kPi = std::numbers::pi;
}

EigenPair firstEigenpair(const Mesh& mesh) {
    const int n = mesh.dim();
    EigenPair pair{0.0, GridFunction(mesh), 0.0};
    for (int i = 0; i < n; ++i) {
        const double h = mesh.spacing(i);
        const double s = std::sin(kPi * h / (2.0 * mesh.domain().edge(i)));
        pair.lambda1h += 4.0 / (h * h) * s * s;
    }
    visitAll(mesh, [&](std::span<const int> idx) {
        double v = 1.0;
        for (int i = 0; i < n; ++i) {
            const int k = idx[i];
            if (k == 0 || k == mesh.count(i)) {
                v = 0.0;
                break;
            }
            v *= std::sin(kPi * static_cast<double>(k) / static_cast<double>(mesh.count(i)));
        }
        pair.phi.at(idx) = v;
    });
    double l1 = 0.0;
    visitInterior(mesh, [&](std::span<const int> idx) { l1 += pair.phi.at(idx); });
    l1 *= mesh.cellVolume();
    pair.tScale = 1.0 / l1;
    return pair;
}

double continuumLambda1(const BoxDomain& domain) {
    double acc = 0.0;
    for (int i = 0; i < domain.dim(); ++i) {
        const double e = domain.edge(i);
        acc += kPi * kPi / (e * e);
    }
    return acc;
}

std::pair<double, GridFunction> eigenOracle(const Mesh& mesh) {
    if (mesh.interiorCount() > 100000)
        throw std::invalid_argument("eigenOracle: interior point count above 1e5");
    // This path assembles; the closed-form path never does.
    DirichletOperator op(mesh);
    auto [lambda, vec] = assembledSmallestEigen(op, 10000);
    return {lambda, op.prolong(vec)};
}

double distanceBoundCheck(const EigenPair& pair) {
    const Mesh& mesh = pair.phi.mesh();
    const int n = mesh.dim();
    const double vol = mesh.domain().volume();
    const double front = vol * vol / std::pow(2.0, n);
    double worst = std::numeric_limits<double>::infinity();
    visitInterior(mesh, [&](std::span<const int> idx) {
        const double d = mesh.distToBoundary(idx);
        const double ratio = pair.tScale * pair.phi.at(idx) * front / std::pow(d, n);
        worst = std::min(worst, ratio);
    });
    return worst;
}

}  // namespace fdbvp
