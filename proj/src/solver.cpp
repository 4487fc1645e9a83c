#include "fdbvp/solver.hpp"

#include "fdbvp/calculus.hpp"
#include "fdbvp/linalg.hpp"
#include "fdbvp/norms.hpp"
#include "fdbvp/spectral.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace fdbvp {

InitialGuess InitialGuess::fromFunction(GridFunction u) {
    InitialGuess g;
    g.kind = Kind::Custom;
    g.custom = std::move(u);
    return g;
}

GridFunction solveLinear(const Mesh& mesh, const GridFunction& diagonalShift,
                         const GridFunction& rhs) {
    if (diagonalShift.mesh() != mesh || rhs.mesh() != mesh)
        throw std::invalid_argument("solveLinear: mesh mismatch");
    DirichletOperator base(mesh);
    std::vector<double> diag = base.restrict(diagonalShift);
    DirichletOperator op(mesh, diag);
    const std::vector<double> b = op.restrict(rhs);

    double minShift = 0.0;
    for (double v : diag) minShift = std::min(minShift, v);
    const double lambda1h = firstEigenpair(mesh).lambda1h;
    const bool spd = lambda1h + minShift > 1e-10 * lambda1h;

    std::vector<double> x(op.size(), 0.0);
    if (spd) {
        const auto cg = conjugateGradient(op, b, x, 1e-13, 50 * op.size() + 2000);
        if (cg.converged) return op.prolong(x);
    }
    return op.prolong(sparseDirectSolve(op, b));
}

namespace {

// Interior residual F(u) = -Delta_h u - f(x, u+); also reports
// max |f(., u+)| for the convergence scale.
struct Residual {
    std::vector<double> F;
    double fInf = 0.0;
    double FInf = 0.0;
};

Residual residual(const DirichletOperator& op, const Nonlinearity& nl,
                  const GridFunction& u) {
    const Mesh& mesh = op.mesh();
    const int n = mesh.dim();
    Residual out;
    out.F.resize(op.size());
    std::vector<double> x(n);
    std::vector<int> idx(n);
    std::vector<std::size_t> stride(n);
    std::vector<double> invH2(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> probe(n, 0);
        probe[i] = 1;
        stride[i] = mesh.flatten(probe);
        invH2[i] = 1.0 / (mesh.spacing(i) * mesh.spacing(i));
    }
    for (std::size_t k = 0; k < op.size(); ++k) {
        const std::size_t flat = op.flatOfInteriorIndex(k);
        mesh.unflatten(flat, idx);
        for (int i = 0; i < n; ++i) x[i] = mesh.coordinate(i, idx[i]);
        double lap = 0.0;
        for (int i = 0; i < n; ++i)
            lap += (u[flat + stride[i]] - 2.0 * u[flat] + u[flat - stride[i]]) * invH2[i];
        const double fv = nl.f(x, std::max(u[flat], 0.0));
        out.F[k] = -lap - fv;
        out.fInf = std::max(out.fInf, std::abs(fv));
        out.FInf = std::max(out.FInf, std::abs(out.F[k]));
    }
    return out;
}

struct NewtonOutcome {
    GridFunction u;
    double residualInf;
    int iters;
    bool converged;
    std::vector<double> history;
};

NewtonOutcome newtonRun(const Mesh& mesh, const Nonlinearity& nl, GridFunction u,
                        const SolveOptions& options, int iterBudget, double lambda1h) {
    DirichletOperator base(mesh);
    const int n = mesh.dim();
    std::vector<double> x(n);
    std::vector<int> idx(n);

    double invH2Sum = 0.0;
    for (int i = 0; i < n; ++i) invH2Sum += 4.0 / (mesh.spacing(i) * mesh.spacing(i));

    Residual res = residual(base, nl, u);
    std::vector<double> history{res.FInf};
    double bestRes = res.FInf;
    GridFunction bestU = u;
    int iter = 0;
    for (; iter < iterBudget; ++iter) {
        const double scale = std::max(1.0, res.fInf);
        // Stencil evaluations cannot resolve residuals below the roundoff
        // of the second differences themselves.
        const double floor = 32.0 * std::numeric_limits<double>::epsilon() *
                             (invH2Sum * normLinf(u) + res.fInf);
        if (res.FInf <= std::max(options.tol * scale, floor)) break;

        // Jacobian diagonal: -d/du f(x, u+) = -f_s(x, u+) [u > 0].
        std::vector<double> diag(base.size(), 0.0);
        for (std::size_t k = 0; k < base.size(); ++k) {
            const std::size_t flat = base.flatOfInteriorIndex(k);
            if (u[flat] > 0.0) {
                mesh.unflatten(flat, idx);
                for (int i = 0; i < n; ++i) x[i] = mesh.coordinate(i, idx[i]);
                diag[k] = -nl.dfds(x, u[flat]);
            }
        }
        DirichletOperator jac(mesh, diag);
        std::vector<double> rhs(res.F.size());
        for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = -res.F[k];
        double minShift = 0.0;
        for (double v : diag) minShift = std::min(minShift, v);
        std::vector<double> step(jac.size(), 0.0);
        bool solved = false;
        if (lambda1h + minShift > 1e-10 * lambda1h) {
            const auto cg = conjugateGradient(jac, rhs, step, 1e-13, 50 * jac.size() + 2000);
            solved = cg.converged;
        }
        if (!solved) step = sparseDirectSolve(jac, rhs);

        // Backtracking on the residual sup-norm.
        bool accepted = false;
        for (double alpha = 1.0; alpha >= 1.0 / 256.0; alpha *= 0.5) {
            GridFunction trial = u;
            for (std::size_t k = 0; k < step.size(); ++k)
                trial[jac.flatOfInteriorIndex(k)] += alpha * step[k];
            Residual trialRes = residual(base, nl, trial);
            if (trialRes.FInf <= (1.0 - 0.25 * alpha) * res.FInf) {
                u = std::move(trial);
                res = std::move(trialRes);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            ++iter;
            break;  // stalled
        }
        history.push_back(res.FInf);
        if (res.FInf < bestRes) {
            bestRes = res.FInf;
            bestU = u;
        }
    }
    const double scale = std::max(1.0, res.fInf);
    const bool converged = res.FInf <= 1e-10 * scale;
    if (res.FInf > bestRes && !converged) {
        u = bestU;
        res = residual(base, nl, u);
    }
    return {std::move(u), res.FInf, iter, converged, std::move(history)};
}

}  // namespace

SolveResult solveNonlinear(const Mesh& mesh, const Nonlinearity& nl, const InitialGuess& initial,
                           const SolveOptions& options) {
    const EigenPair pair = firstEigenpair(mesh);
    auto makeStart = [&](double tau) {
        GridFunction u = pair.phi;
        for (double& v : u.values()) v *= tau;
        return u;
    };

    GridFunction start(mesh);
    double tauStar = 0.0;
    if (initial.kind == InitialGuess::Kind::Custom) {
        if (!initial.custom || initial.custom->mesh() != mesh)
            throw std::invalid_argument("solveNonlinear: bad custom initial guess");
        start = *initial.custom;
    } else if (initial.kind == InitialGuess::Kind::ScaledEigen) {
        const double p = nl.metadata.present && nl.metadata.p > 1.0 ? nl.metadata.p : 2.0;
        const double phiInf = normLinf(pair.phi);
        tauStar = initial.tau != 0.0
                      ? initial.tau
                      : std::pow(pair.lambda1h / std::pow(phiInf, p - 1.0), 1.0 / (p - 1.0));
        start = makeStart(tauStar);
    }

    int budget = options.maxNewton;
    NewtonOutcome best = newtonRun(mesh, nl, start, options, budget, pair.lambda1h);
    budget -= best.iters;
    int itersTotal = best.iters;
    if (!best.converged && options.allowContinuation &&
        initial.kind == InitialGuess::Kind::ScaledEigen) {
        for (const double factor : {0.5, 0.25, 2.0, 1.5, 0.125, 4.0}) {
            if (budget <= 0 || best.converged) break;
            NewtonOutcome retry =
                newtonRun(mesh, nl, makeStart(tauStar * factor), options, budget, pair.lambda1h);
            budget -= retry.iters;
            itersTotal += retry.iters;
            if (retry.converged || retry.residualInf < best.residualInf) best = std::move(retry);
        }
    }

    SolveResult result{std::move(best.u), best.residualInf, itersTotal,
                       0.0,               best.converged,   std::move(best.history)};
    result.minValue = 0.0;
    for (double v : result.u.values()) result.minValue = std::min(result.minValue, v);
    return result;
}

std::string SolutionChecks::toJson() const {
    nlohmann::json j{{"stencil_residual_inf", stencilResidualInf},
                     {"stencil_residual_rel", stencilResidualRel},
                     {"weak_form_max_rel", weakFormMaxRel},
                     {"weak_form_samples", weakFormSamples},
                     {"min_value", minValue},
                     {"nonnegative", nonnegative}};
    if (eigenTestChecked) {
        j["sum_u_phi"] = sumUPhi;
        j["sum_u_phi_bound"] = sumUPhiBound;
        j["sum_f_phi"] = sumFPhi;
        j["sum_f_phi_bound"] = sumFPhiBound;
    }
    return j.dump(2);
}

SolutionChecks verifySolution(const SolveResult& result, const Nonlinearity& nl) {
    const GridFunction& u = result.u;
    const Mesh& mesh = u.mesh();
    const int n = mesh.dim();
    SolutionChecks checks;

    // f(x, u+) sampled on the interior as a grid function.
    GridFunction fu(mesh);
    std::vector<double> x(n);
    visitInterior(mesh, [&](std::span<const int> idx) {
        for (int i = 0; i < n; ++i) x[i] = mesh.coordinate(i, idx[i]);
        fu.at(idx) = nl.f(x, std::max(u.at(idx), 0.0));
    });

    const GridFunction lap = discreteLaplacian(u);
    const double uInf = normLinf(u);
    double stencilScale = std::abs(normLinf(fu));
    for (int i = 0; i < n; ++i)
        stencilScale += 4.0 * uInf / (mesh.spacing(i) * mesh.spacing(i));
    visitInterior(mesh, [&](std::span<const int> idx) {
        checks.stencilResidualInf =
            std::max(checks.stencilResidualInf, std::abs(-lap.at(idx) - fu.at(idx)));
    });
    checks.stencilResidualRel = checks.stencilResidualInf / stencilScale;

    // Weak-form residual against point masses; all nodes on small meshes,
    // a seeded sample on large ones.
    std::vector<std::size_t> nodes;
    const std::size_t interiorCount = mesh.interiorCount();
    DirichletOperator map(mesh);
    if (interiorCount <= 5000) {
        nodes.resize(interiorCount);
        for (std::size_t k = 0; k < interiorCount; ++k) nodes[k] = map.flatOfInteriorIndex(k);
    } else {
        std::mt19937_64 rng(12345);
        for (int k = 0; k < 2000; ++k)
            nodes.push_back(map.flatOfInteriorIndex(rng() % interiorCount));
    }
    std::vector<int> idx(n);
    for (const std::size_t flat : nodes) {
        mesh.unflatten(flat, idx);
        const GridFunction phi = pointMass(mesh, idx);
        const double r = weakFormResidual(u, fu, phi);
        const double scale = weakFormScale(u, fu, phi);
        checks.weakFormMaxRel =
            std::max(checks.weakFormMaxRel, std::abs(r) / std::max(scale, 1e-300));
    }
    checks.weakFormSamples = static_cast<int>(nodes.size());

    checks.minValue = result.minValue;
    checks.nonnegative = result.minValue >= -1e-12 * std::max(1.0, uInf);

    const double lambda1 = continuumLambda1(mesh.domain());
    if (nl.metadata.present && nl.metadata.lambda > lambda1) {
        const EigenPair pair = firstEigenpair(mesh);
        double sumU = 0.0, sumF = 0.0;
        visitInterior(mesh, [&](std::span<const int> idx2) {
            const double phiN = pair.tScale * pair.phi.at(idx2);
            sumU += u.at(idx2) * phiN;
            sumF += fu.at(idx2) * phiN;
        });
        checks.eigenTestChecked = true;
        checks.sumUPhi = sumU * mesh.cellVolume();
        checks.sumFPhi = sumF * mesh.cellVolume();
        checks.sumUPhiBound = nl.metadata.C1 / (nl.metadata.lambda - lambda1);
        checks.sumFPhiBound = nl.metadata.C1 * lambda1 / (nl.metadata.lambda - lambda1);
    }
    return checks;
}

}  // namespace fdbvp
