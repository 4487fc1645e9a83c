#include "fdbvp/linalg.hpp"

#include <Eigen/Sparse>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fdbvp {

DirichletOperator::DirichletOperator(const Mesh& mesh) : DirichletOperator(mesh, {}) {}

DirichletOperator::DirichletOperator(const Mesh& mesh, std::vector<double> diagonal)
    : mesh_(mesh), diag_(std::move(diagonal)) {
    const int n = mesh_.dim();
    interiorOfClosed_.assign(mesh_.pointCount(), -1);
    closedOfInterior_.reserve(mesh_.interiorCount());
    visitInterior(mesh_, [&](std::span<const int> idx) {
        const std::size_t flat = mesh_.flatten(idx);
        interiorOfClosed_[flat] = static_cast<std::int64_t>(closedOfInterior_.size());
        closedOfInterior_.push_back(flat);
    });
    if (!diag_.empty() && diag_.size() != closedOfInterior_.size())
        throw std::invalid_argument("DirichletOperator: diagonal length mismatch");
    axisStride_.resize(n);
    invH2_.resize(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> probe(n, 0);
        probe[i] = 1;
        axisStride_[i] = mesh_.flatten(probe);
        invH2_[i] = 1.0 / (mesh_.spacing(i) * mesh_.spacing(i));
    }
}

void DirichletOperator::apply(std::span<const double> x, std::span<double> y) const {
    const int n = mesh_.dim();
    const std::size_t m = size();
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t flat = closedOfInterior_[k];
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double sumNeighbors = 0.0;
            const std::int64_t left = interiorOfClosed_[flat - axisStride_[i]];
            const std::int64_t right = interiorOfClosed_[flat + axisStride_[i]];
            if (left >= 0) sumNeighbors += x[static_cast<std::size_t>(left)];
            if (right >= 0) sumNeighbors += x[static_cast<std::size_t>(right)];
            acc += (2.0 * x[k] - sumNeighbors) * invH2_[i];
        }
        if (!diag_.empty()) acc += diag_[k] * x[k];
        y[k] = acc;
    }
}

std::vector<double> DirichletOperator::restrict(const GridFunction& u) const {
    std::vector<double> x(size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = u[closedOfInterior_[k]];
    return x;
}

GridFunction DirichletOperator::prolong(std::span<const double> x) const {
    GridFunction u(mesh_);
    for (std::size_t k = 0; k < x.size(); ++k) u[closedOfInterior_[k]] = x[k];
    return u;
}

namespace {
double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}
}  // namespace

CgResult conjugateGradient(const DirichletOperator& op, std::span<const double> b,
                           std::span<double> x, double relTol, std::size_t maxIter) {
    const std::size_t m = op.size();
    std::vector<double> r(m), p(m), Ap(m);
    op.apply(x, Ap);
    for (std::size_t i = 0; i < m; ++i) r[i] = b[i] - Ap[i];
    p.assign(r.begin(), r.end());
    const double bNorm = std::sqrt(dot(b, b));
    if (bNorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {true, 0, 0.0};
    }
    double rr = dot(r, r);
    CgResult out;
    while (out.iterations < maxIter) {
        if (std::sqrt(rr) <= relTol * bNorm) break;
        op.apply(p, Ap);
        const double pAp = dot(p, Ap);
        if (!(pAp > 0.0)) break;  // lost positive definiteness
        const double alpha = rr / pAp;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * Ap[i];
        }
        const double rrNew = dot(r, r);
        const double beta = rrNew / rr;
        rr = rrNew;
        for (std::size_t i = 0; i < m; ++i) p[i] = r[i] + beta * p[i];
        ++out.iterations;
    }
    out.relResidual = std::sqrt(rr) / bNorm;
    out.converged = out.relResidual <= relTol;
    return out;
}

namespace {

Eigen::SparseMatrix<double> assembleSparse(const DirichletOperator& op) {
    const std::size_t m = op.size();
    const Mesh& mesh = op.mesh();
    const int n = mesh.dim();
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(m * (2 * n + 1));
    std::vector<int> idx(n);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t flat = op.flatOfInteriorIndex(k);
        mesh.unflatten(flat, idx);
        double diag = op.diagonal().empty() ? 0.0 : op.diagonal()[k];
        for (int i = 0; i < n; ++i) {
            const double invH2 = 1.0 / (mesh.spacing(i) * mesh.spacing(i));
            diag += 2.0 * invH2;
            std::vector<int> nb(idx);
            nb[i] -= 1;
            if (mesh.isInterior(nb)) {
                const auto col = op.interiorIndexOfFlat(mesh.flatten(nb));
                trips.emplace_back(static_cast<int>(k), static_cast<int>(col), -invH2);
            }
            nb[i] += 2;
            if (mesh.isInterior(nb)) {
                const auto col = op.interiorIndexOfFlat(mesh.flatten(nb));
                trips.emplace_back(static_cast<int>(k), static_cast<int>(col), -invH2);
            }
        }
        trips.emplace_back(static_cast<int>(k), static_cast<int>(k), diag);
    }
    Eigen::SparseMatrix<double> A(static_cast<int>(m), static_cast<int>(m));
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

}  // namespace

std::vector<double> sparseDirectSolve(const DirichletOperator& op, std::span<const double> b) {
    const std::size_t m = op.size();
    const Eigen::SparseMatrix<double> A = assembleSparse(op);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("sparseDirectSolve: factorization failed");
    Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(m));
    Eigen::VectorXd xv = lu.solve(bv);
    // One step of iterative refinement keeps the residual near roundoff.
    Eigen::VectorXd res = bv - A * xv;
    xv += lu.solve(res);
    return std::vector<double>(xv.data(), xv.data() + m);
}

std::pair<double, std::vector<double>> assembledSmallestEigen(const DirichletOperator& op,
                                                              std::size_t maxIter) {
    const std::size_t m = op.size();
    const Eigen::SparseMatrix<double> A = assembleSparse(op);
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-13);
    cg.setMaxIterations(static_cast<Eigen::Index>(100 * m + 1000));
    cg.compute(A);

    Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
    double lambda = 0.0, lambdaPrev = std::numeric_limits<double>::infinity();
    std::size_t iter = 0;
    for (; iter < maxIter; ++iter) {
        x.normalize();
        const Eigen::VectorXd y = cg.solve(x);
        if (cg.info() != Eigen::Success)
            throw std::runtime_error("assembledSmallestEigen: inner solve stalled");
        lambda = y.dot(A * y) / y.squaredNorm();
        x = y;
        if (std::abs(lambda - lambdaPrev) <= 1e-12 * std::abs(lambda) && iter >= 2) break;
        lambdaPrev = lambda;
    }
    if (iter == maxIter)
        throw std::runtime_error("assembledSmallestEigen: no convergence after the iteration cap");
    Eigen::Index where = 0;
    x.cwiseAbs().maxCoeff(&where);
    x /= x[where];
    return {lambda, std::vector<double>(x.data(), x.data() + m)};
}

}  // namespace fdbvp
