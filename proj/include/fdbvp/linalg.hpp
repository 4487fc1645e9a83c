#pragma once

#include "fdbvp/grid.hpp"

#include <cstdint>
#include <vector>

namespace fdbvp {

/// y = (-Delta_h + diag(c)) x on the interior unknowns of a mesh, with
/// homogeneous Dirichlet data eliminated. Unknowns are numbered in the
/// lexicographic order of their interior multi-indices.
class DirichletOperator {
public:
    explicit DirichletOperator(const Mesh& mesh);
    DirichletOperator(const Mesh& mesh, std::vector<double> diagonal);

    const Mesh& mesh() const { return mesh_; }
    std::size_t size() const { return closedOfInterior_.size(); }
    const std::vector<double>& diagonal() const { return diag_; }

    void apply(std::span<const double> x, std::span<double> y) const;

    /// Interior unknown vector from the interior values of a grid function.
    std::vector<double> restrict(const GridFunction& u) const;
    /// Grid function with the given interior values and zero boundary.
    GridFunction prolong(std::span<const double> x) const;

    std::int64_t interiorIndexOfFlat(std::size_t flat) const { return interiorOfClosed_[flat]; }
    std::size_t flatOfInteriorIndex(std::size_t k) const { return closedOfInterior_[k]; }

private:
    Mesh mesh_;
    std::vector<double> diag_;                  // empty means zero shift
    std::vector<std::int64_t> interiorOfClosed_;
    std::vector<std::size_t> closedOfInterior_;
    std::vector<std::size_t> axisStride_;
    std::vector<double> invH2_;
};

struct CgResult {
    bool converged = false;
    std::size_t iterations = 0;
    double relResidual = 0.0;
};

/// Plain conjugate gradients for the (positive definite) operator.
/// x holds the initial guess on entry and the solution on exit.
CgResult conjugateGradient(const DirichletOperator& op, std::span<const double> b,
                           std::span<double> x, double relTol, std::size_t maxIter);

/// Sparse LU solve of (-Delta_h + diag(c)) x = b; works for indefinite
/// shifts as well. Throws if the factorization fails.
std::vector<double> sparseDirectSolve(const DirichletOperator& op, std::span<const double> b);

/// Smallest eigenvalue of the assembled interior matrix via inverse power
/// iteration with conjugate-gradient solves (relative tolerance 1e-12 on
/// the eigenvalue). Returns the interior eigenvector scaled to a positive
/// maximum of one. Throws after maxIter iterations without convergence.
std::pair<double, std::vector<double>> assembledSmallestEigen(const DirichletOperator& op,
                                                              std::size_t maxIter);

}  // namespace fdbvp
