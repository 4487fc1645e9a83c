#pragma once

#include "fdbvp/grid.hpp"

#include <utility>

namespace fdbvp {

/// First Dirichlet eigenpair of -Delta_h on a bounded box mesh, plus the
/// scale t making the interior L^1 sum of t*phi equal one.
struct EigenPair {
    double lambda1h = 0.0;  // sum_i (4/h_i^2) sin^2(pi h_i / (2(b_i - a_i)))
    GridFunction phi;       // prod_i sin(pi (x_i - a_i)/(b_i - a_i)), zero on the boundary
    double tScale = 0.0;    // 1 / (sum over interior of phi * cellVolume)
};

EigenPair firstEigenpair(const Mesh& mesh);

/// lambda_1 = sum_i pi^2/(b_i - a_i)^2, the continuum first eigenvalue;
/// the discrete one stays strictly below it.
double continuumLambda1(const BoxDomain& domain);

/// Smallest eigenvalue of the assembled -Delta_h via inverse power
/// iteration (conjugate-gradient solves, tolerance 1e-12), eigenvector
/// normalized to maximum one. Independent of the closed-form path: this
/// side assembles, the formula side never does. Requires interior count
/// <= 1e5; throws after 1e4 iterations without convergence.
std::pair<double, GridFunction> eigenOracle(const Mesh& mesh);

/// min over interior x of t*phi(x) * |Omega|^2 / (2^n dist(x,boundary)^n).
/// The eigenfunction distance bound says this ratio is >= 1.
double distanceBoundCheck(const EigenPair& pair);

}  // namespace fdbvp
