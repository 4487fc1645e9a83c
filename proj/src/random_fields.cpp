#include "fdbvp/random_fields.hpp"

#include "fdbvp/spectral.hpp"

#include <cmath>

namespace fdbvp {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniformIn(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

GridFunction applyMargin(GridFunction u, int margin) {
    if (margin <= 0) return u;
    const Mesh& mesh = u.mesh();
    visitAll(mesh, [&](std::span<const int> idx) {
        for (int i = 0; i < mesh.dim(); ++i) {
            if (idx[i] < margin || idx[i] > mesh.count(i) - margin) {
                u.at(idx) = 0.0;
                return;
            }
        }
    });
    return u;
}

GridFunction randomUniformField(const Mesh& mesh, int margin, std::mt19937_64& rng) {
    GridFunction u(mesh);
    for (double& v : u.values()) v = uniformIn(rng, -1.0, 1.0);
    return applyMargin(std::move(u), margin);
}

GridFunction randomBumpField(const Mesh& mesh, int margin, std::mt19937_64& rng) {
    const int n = mesh.dim();
    std::vector<double> center(n), width(n);
    for (int i = 0; i < n; ++i) {
        const double e = mesh.domain().edge(i);
        center[i] = mesh.domain().lower(i) + e * uniformIn(rng, 0.3, 0.7);
        width[i] = e * uniformIn(rng, 0.4, 1.2);
    }
    const double sign = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    GridFunction u(mesh);
    visitAll(mesh, [&](std::span<const int> idx) {
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = 2.0 * (mesh.coordinate(i, idx[i]) - center[i]) / width[i];
            r2 += t * t;
        }
        if (r2 < 1.0) u.at(idx) = sign * std::exp(-1.0 / (1.0 - r2));
    });
    return applyMargin(std::move(u), margin);
}

GridFunction randomField(const Mesh& mesh, int margin, std::uint64_t sampleSeed) {
    std::mt19937_64 rng(sampleSeed);
    if (sampleSeed % 3 == 2) return randomBumpField(mesh, margin, rng);
    return randomUniformField(mesh, margin, rng);
}

GridFunction adversaryEigenfunction(const Mesh& mesh, int margin) {
    return applyMargin(firstEigenpair(mesh).phi, margin);
}

GridFunction adversaryDistanceCone(const Mesh& mesh, int margin) {
    GridFunction u(mesh);
    visitInterior(mesh, [&](std::span<const int> idx) { u.at(idx) = mesh.distToBoundary(idx); });
    return applyMargin(std::move(u), margin);
}

GridFunction adversaryPointMass(const Mesh& mesh, int margin) {
    std::vector<int> idx(mesh.dim());
    for (int i = 0; i < mesh.dim(); ++i) {
        int k = mesh.count(i) / 2;
        k = std::max(k, margin);
        k = std::min(k, mesh.count(i) - margin);
        idx[i] = k;
    }
    GridFunction u(mesh);
    u.at(idx) = 1.0;
    return u;
}

}  // namespace fdbvp
