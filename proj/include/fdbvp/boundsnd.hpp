#pragma once

#include "fdbvp/grid.hpp"

#include <string>
#include <vector>

namespace fdbvp {

/// Moser-iteration exponent bookkeeping. For n >= 3 the iteration runs on n
/// itself; for n = 2 a surrogate dimension nHat > 2 takes its place, free
/// apart from q > nHat/2 > 1.
struct MoserParams {
    int n = 3;
    double q = 3.0;
    double nHat = 3.0;  // used only when n == 2

    double qPrime() const { return q / (q - 1.0); }
    double effectiveN() const { return n >= 3 ? static_cast<double>(n) : nHat; }
    /// Exponent ratio l = N/((N-2) q') with N the effective dimension; the
    /// iteration exponents are t_k = l^k.
    double l() const;
    /// (N(q-1)/(2q-N))^2 = (l/(l-1))^2, the exponent on the constant.
    double kExponent() const;
    void validate() const;
};

/// K of the linear Moser bound, from ||(|a|+1)||_{L^q}:
///   n >= 3: max{n/((n-2)q'), C_S(n) sqrt(2) ||..||^{1/2}}^{(n(q-1)/(2q-n))^2}
///   n  = 2: max{nHat/((nHat-2)q'),
///              (4 nHat/(nHat-2)) C_S(2)(1+C_P) sqrt(2) ||..||^{1/2}}^{...}
/// with C_P the mesh-independent Poincare constant of the box.
double moserK(const MoserParams& params, double aNormLq, const BoxDomain& domain);

/// ||u||_inf <= (2K)^{q'} ||u||_{L^2} + 2K ||b||_inf (1 + |Omega|).
double linearLinfBound(const MoserParams& params, double uL2, double bInf, double aNormLq,
                       const BoxDomain& domain);

/// K_u of the nonlinear Moser bound for |f(x,s)| <= C2 |s|^p + C3, with the
/// solution entering only through ||u||_D. For n >= 3 the exponent q is
/// pinned to 2n/((n-2)(p-1)) and p must stay below (n+2)/(n-2).
double nonlinearKu(const MoserParams& params, double p, double C2, double uDNorm,
                   const BoxDomain& domain);

/// Exponents and D-norm ceiling extracted from the a priori argument.
struct DNormBound {
    double pTilde = 0.0;  // (p + n/(n-1))/2
    double alpha1 = 0.0;  // p + pTilde
    double alpha2 = 0.0;  // pTilde
    double beta = 0.0;    // n (pTilde - 1) < 2
    double dNormBound = 0.0;
};

/// Every non-negative solution with f >= lambda s - C1 (lambda > lambda_1)
/// and f <= C2 s^p + C3 (1 < p < n/(n-1)) obeys
///   ||u||_D^{pTilde - p} <= max{1, (C1 lambda_1 |Omega|^2 /
///     ((lambda - lambda_1) 2^n))^{pTilde-1}
///     (C2 C_HS(n, alpha1, beta) + C3 C_HS(n, alpha2, beta))}.
/// The Hardy-Sobolev admissibility of both exponent pairs is re-verified.
DNormBound dnormApriori(int n, double p, double lambda, double C1, double C2, double C3,
                        const BoxDomain& domain);

struct NDBoundReport {
    int n = 0;
    double p = 0.0, lambda = 0.0, C1 = 0.0, C2 = 0.0, C3 = 0.0;
    double pTilde = 0.0, alpha1 = 0.0, alpha2 = 0.0, beta = 0.0;
    // Constants feeding the pipeline, echoed for inspection.
    double lambda1 = 0.0, cP = 0.0, cS = 0.0, cH = 0.0, cHS1 = 0.0, cHS2 = 0.0;
    double dNormBound = 0.0;
    double q = 0.0, qPrime = 0.0, nHat = 0.0;
    double Ku = 0.0;
    double Mbar = 0.0;

    std::string toJson() const;
};

/// Full pipeline: D-norm ceiling, then K_u, then
///   Mbar = (2 K_u)^{q'} C_P(Omega) dNormBound + 2 K_u C3 (1 + |Omega|).
/// For n = 2 the free pair (q, nHat) is chosen to minimize Mbar over
/// q in max(1.01, 2/(p-1)) * {1.1, 1.5, 2, 4} and nHat in {2.2, 2.5, 3, 4}
/// subject to q > nHat/2 > 1.
NDBoundReport aprioriBoundNd(int n, double p, double lambda, double C1, double C2, double C3,
                             const BoxDomain& domain);

struct MoserTracePoint {
    double tK = 0.0;      // iteration exponent l^k
    double mK = 0.0;      // ||u_+||_{L^{2 q' t_k}}
    double mTildeK = 0.0;  // comparison sequence value
};

/// Empirical Moser trace for a solution of -Delta_h u = a u + b (residual
/// checked): m_k against the comparison sequence
/// mTilde_{k+1} = (t_k sqrt(2) C)^{1/t_k} mTilde_k,
/// mTilde_0 = ||u_+||_{L^{2q'}} + ||b||_inf (1 + |Omega|). The trace stays
/// below the comparison sequence.
std::vector<MoserTracePoint> moserIterationTrace(const GridFunction& u, const GridFunction& a,
                                                 const GridFunction& b, const MoserParams& params,
                                                 int steps);

/// ||(|a|+1)||_{L^q} over the interior points, the coefficient norm feeding
/// the Moser constants.
double coefficientNormLq(const GridFunction& a, double q);

}  // namespace fdbvp
