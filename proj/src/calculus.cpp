#include "fdbvp/calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace fdbvp {

double StencilApplication::at(std::span<const int> idx) const {
    // Reduced-grid strides: axis `axis` has one point fewer than the closed grid.
    const int n = mesh.dim();
    std::size_t flat = 0;
    std::size_t stride = 1;
    for (int i = n - 1; i >= 0; --i) {
        int k = idx[i];
        if (i == axis && direction == DiffDirection::Backward) --k;
        flat += static_cast<std::size_t>(k) * stride;
        stride *= static_cast<std::size_t>(mesh.count(i) + (i == axis ? 0 : 1));
    }
    return values[flat];
}

StencilApplication diff(const GridFunction& u, int axis, DiffDirection direction) {
    const Mesh& mesh = u.mesh();
    if (axis < 0 || axis >= mesh.dim()) throw std::invalid_argument("diff: axis out of range");
    StencilApplication result{mesh, axis, direction, {}};
    std::size_t total = 1;
    for (int i = 0; i < mesh.dim(); ++i)
        total *= static_cast<std::size_t>(mesh.count(i) + (i == axis ? 0 : 1));
    result.values.reserve(total);

    const double invH = 1.0 / mesh.spacing(axis);
    std::vector<int> lo(mesh.dim(), 0), hi(mesh.counts());
    if (direction == DiffDirection::Forward)
        hi[axis] -= 1;  // base points exclude the forward boundary slice
    else
        lo[axis] += 1;  // exclude the backward boundary slice
    const std::size_t axisStride = [&] {
        std::vector<int> probe(mesh.dim(), 0);
        probe[axis] = 1;
        return mesh.flatten(probe);
    }();
    visitBox(lo, hi, [&](std::span<const int> idx) {
        const std::size_t flat = mesh.flatten(idx);
        if (direction == DiffDirection::Forward)
            result.values.push_back((u[flat + axisStride] - u[flat]) * invH);
        else
            result.values.push_back((u[flat] - u[flat - axisStride]) * invH);
    });
    return result;
}

GridFunction discreteLaplacian(const GridFunction& u) {
    const Mesh& mesh = u.mesh();
    GridFunction out(mesh);
    const int n = mesh.dim();
    std::vector<double> invH2(n);
    std::vector<std::size_t> stride(n);
    for (int i = 0; i < n; ++i) {
        invH2[i] = 1.0 / (mesh.spacing(i) * mesh.spacing(i));
        std::vector<int> probe(n, 0);
        probe[i] = 1;
        stride[i] = mesh.flatten(probe);
    }
    visitInterior(mesh, [&](std::span<const int> idx) {
        const std::size_t flat = mesh.flatten(idx);
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += (u[flat + stride[i]] - 2.0 * u[flat] + u[flat - stride[i]]) * invH2[i];
        out[flat] = acc;
    });
    return out;
}

namespace {

void requireBoundaryZero(const GridFunction& phi) {
    const Mesh& mesh = phi.mesh();
    bool ok = true;
    visitAll(mesh, [&](std::span<const int> idx) {
        if (!mesh.isInterior(idx) && phi.at(idx) != 0.0) ok = false;
    });
    if (!ok) throw std::invalid_argument("weak form: test function must vanish on the boundary");
}

template <bool Absolute>
double weakFormAccumulate(const GridFunction& u, const GridFunction& f, const GridFunction& phi) {
    const Mesh& mesh = u.mesh();
    const double hvol = mesh.cellVolume();
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
            const double du = (u[flat + stride] - u[flat]) * invH;
            const double dphi = (phi[flat + stride] - phi[flat]) * invH;
            acc += (Absolute ? std::abs(du * dphi) : du * dphi) * hvol;
        });
    }
    visitInterior(mesh, [&](std::span<const int> idx) {
        const std::size_t flat = mesh.flatten(idx);
        const double term = f[flat] * phi[flat] * hvol;
        acc += Absolute ? std::abs(term) : -term;
    });
    return acc;
}

}  // namespace

double weakFormResidual(const GridFunction& u, const GridFunction& f, const GridFunction& phi) {
    if (u.mesh() != f.mesh() || u.mesh() != phi.mesh())
        throw std::invalid_argument("weak form: mesh mismatch");
    requireBoundaryZero(phi);
    return weakFormAccumulate<false>(u, f, phi);
}

double weakFormScale(const GridFunction& u, const GridFunction& f, const GridFunction& phi) {
    return weakFormAccumulate<true>(u, f, phi);
}

GridFunction pointMass(const Mesh& mesh, std::span<const int> idx) {
    GridFunction phi(mesh);
    phi.at(idx) = 1.0;
    return phi;
}

}  // namespace fdbvp
