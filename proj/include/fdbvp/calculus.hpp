#pragma once

#include "fdbvp/grid.hpp"

namespace fdbvp {

enum class DiffDirection { Forward, Backward };

/// Result of applying a one-sided difference quotient along one axis.
/// The value array covers exactly the applicable point set: all closed-grid
/// points except the forward (resp. backward) boundary slice of that axis,
/// in lexicographic order over the reduced grid.
struct StencilApplication {
    Mesh mesh;
    int axis = 0;
    DiffDirection direction = DiffDirection::Forward;
    std::vector<double> values;

    /// Value at a closed-grid index of the base point x of the quotient.
    /// For forward differences x ranges over indices with k_axis < N_axis,
    /// for backward differences over indices with k_axis > 0.
    double at(std::span<const int> idx) const;
};

/// Forward difference (u(x+delta_i) - u(x))/h_i on the grid minus the
/// forward boundary slice; backward analogously.
StencilApplication diff(const GridFunction& u, int axis, DiffDirection direction);

/// Delta_h u(x) = sum_i (u(x+delta_i) - 2u(x) + u(x-delta_i))/h_i^2 at every
/// interior point. The returned function is zero on the boundary slices,
/// which are outside the operator's domain.
GridFunction discreteLaplacian(const GridFunction& u);

/// Summation-by-parts residual
///   sum_i sum_{x not on forward boundary i} D_i^+ u D_i^+ phi * cellVolume
///   - sum_{interior x} f phi * cellVolume.
/// Vanishes (to roundoff) for every compactly supported phi exactly when
/// -Delta_h u = f on the interior. phi must vanish on the boundary.
double weakFormResidual(const GridFunction& u, const GridFunction& f, const GridFunction& phi);

/// Magnitude scale of the same two sums with every term replaced by its
/// absolute value; the natural yardstick for calling the residual zero in
/// floating point.
double weakFormScale(const GridFunction& u, const GridFunction& f, const GridFunction& phi);

/// phi = 1 at one closed-grid point, 0 elsewhere.
GridFunction pointMass(const Mesh& mesh, std::span<const int> idx);

}  // namespace fdbvp
