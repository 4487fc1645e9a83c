#pragma once

#include "fdbvp/grid.hpp"

#include <utility>

namespace fdbvp {

/// Continuous piecewise-linear interpolant of a 2d grid function on the
/// two-triangle split of every mesh cell: with cell corners
/// A=(0,0), B=(h1,0), C=(0,h2), D=(h1,h2) in local coordinates,
/// T1 = conv{A,B,D} (below the A-D diagonal) and T2 = conv{A,C,D}.
/// The interpolant matches u at all grid points and its triangle gradients
/// reproduce the forward differences.
class TriangulatedInterpolant {
public:
    explicit TriangulatedInterpolant(GridFunction u);

    const Mesh& mesh() const { return nodal_.mesh(); }
    const GridFunction& nodal() const { return nodal_; }

    double value(double x1, double x2) const;

    /// Piecewise-constant gradient on the triangle containing (x1, x2);
    /// points on edges resolve to the lower triangle T1.
    std::pair<double, double> gradient(double x1, double x2) const;

private:
    GridFunction nodal_;
};

TriangulatedInterpolant interpolate(const GridFunction& u);

/// Exact integral of u~^p over the box for nonnegative u and integer
/// p >= 1, via the per-triangle closed form
/// h1 h2 / ((p+1)(p+2)) * tripleTerm(corner values). Satisfies
/// (1/(8 p^2)) sum u^p h <= integral <= 8 sum u^p h.
double powerIntegral(const TriangulatedInterpolant& interp, int p);

/// Exact integral of |grad u~|^2 over the box; never exceeds ||u||_D^2.
double gradientEnergy(const TriangulatedInterpolant& interp);

/// Refined 7-point triangle quadrature of |u~|^q over the box; exact for
/// polynomial integrands up to degree 5 on each subtriangle.
double integratePowAbs(const TriangulatedInterpolant& interp, double q, int refineLevels = 4);

/// Rectangle estimate: lhs = integral of |u~|^q over the box (quadrature),
/// rhs = max{2 sqrt(pi) e1/e2, 2 sqrt(pi) e2/e1, 2/sqrt(|Q|)}^q * |Q| *
/// (1 + q/2)^{1 + q/2} * ||u~||_{W^{1,2}(Q)}^q with exact piecewise-linear
/// continuum norms. Edge lengths must lie in [1,2] (the tiling regime).
std::pair<double, double> rectangleEstimateCheck(const GridFunction& u, double q);

}  // namespace fdbvp
