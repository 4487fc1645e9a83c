#pragma once

#include "fdbvp/grid.hpp"
#include "fdbvp/nonlinearity.hpp"

#include <optional>
#include <string>

namespace fdbvp {

/// Solves (-Delta_h + diag(shift)) u = rhs with zero Dirichlet data.
/// Positive definite systems (min shift above -lambda_{1,h}) go through
/// matrix-free conjugate gradients at relative residual 1e-12; anything
/// else, or a stalled CG, falls back to a sparse direct factorization.
GridFunction solveLinear(const Mesh& mesh, const GridFunction& diagonalShift,
                         const GridFunction& rhs);

struct SolveResult {
    GridFunction u;
    double residualInf = 0.0;
    int newtonIters = 0;
    double minValue = 0.0;
    bool converged = false;
    std::vector<double> residualHistory;  // sup-norm residual after each accepted step
};

struct InitialGuess {
    enum class Kind { Zero, ScaledEigen, Custom };
    Kind kind = Kind::Zero;
    double tau = 0.0;  // ScaledEigen scale; 0 picks tau* = (lambda_{1,h}/||phi||^{p-1})^{1/(p-1)}
    std::optional<GridFunction> custom;

    static InitialGuess zero() { return {}; }
    static InitialGuess scaledEigen(double tau = 0.0) {
        return {Kind::ScaledEigen, tau, std::nullopt};
    }
    static InitialGuess fromFunction(GridFunction u);
};

struct SolveOptions {
    double tol = 1e-12;          // Newton target: ||F||_inf <= tol * max(1, ||f(.,u)||_inf)
    int maxNewton = 200;         // across the whole damping/continuation schedule
    bool allowContinuation = true;
};

/// Damped Newton for F(u) = -Delta_h u - f(x, u+) on the interior, zero
/// boundary. f is fed the positive part, so iterates may dip negative and
/// the dip is reported, never clipped. Backtracking halves the step down to
/// 2^-8; with a scaled-eigenfunction start, a stalled run retries nearby
/// scales. A non-converged run returns the best iterate, flagged.
SolveResult solveNonlinear(const Mesh& mesh, const Nonlinearity& f, const InitialGuess& initial,
                           const SolveOptions& options = {});

struct SolutionChecks {
    double stencilResidualInf = 0.0;
    double stencilResidualRel = 0.0;  // against the stencil magnitude scale
    double weakFormMaxRel = 0.0;      // point-mass tests, scale-relative
    int weakFormSamples = 0;
    double minValue = 0.0;
    bool nonnegative = false;
    // Eigenfunction tests (only when metadata carries lambda > lambda_1):
    bool eigenTestChecked = false;
    double sumUPhi = 0.0, sumUPhiBound = 0.0;
    double sumFPhi = 0.0, sumFPhiBound = 0.0;

    std::string toJson() const;
};

/// Independent re-verification of a computed solution: stencil residual,
/// weak-form residual against point masses (all interior nodes up to 5000,
/// then a seeded sample), nonnegativity, and the eigenfunction-test bounds
///   sum u phi h <= C1/(lambda - lambda_1),
///   sum f(x,u) phi h <= C1 lambda_1/(lambda - lambda_1)
/// with phi normalized to unit interior L^1 sum.
SolutionChecks verifySolution(const SolveResult& result, const Nonlinearity& f);

}  // namespace fdbvp
