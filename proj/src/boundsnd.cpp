#include "fdbvp/boundsnd.hpp"

#include "fdbvp/calculus.hpp"
#include "fdbvp/inequalities.hpp"
#include "fdbvp/norms.hpp"
#include "fdbvp/spectral.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdbvp {

double MoserParams::l() const {
    const double N = effectiveN();
    return N / ((N - 2.0) * qPrime());
}

double MoserParams::kExponent() const {
    const double N = effectiveN();
    const double r = N * (q - 1.0) / (2.0 * q - N);
    return r * r;
}

void MoserParams::validate() const {
    if (n < 2) throw std::invalid_argument("MoserParams: requires n >= 2");
    if (n >= 3) {
        if (!(q > n / 2.0)) throw std::invalid_argument("MoserParams: requires q > n/2");
    } else {
        if (!(nHat > 2.0)) throw std::invalid_argument("MoserParams: requires nHat > 2");
        if (!(q > nHat / 2.0))
            throw std::invalid_argument("MoserParams: requires q > nHat/2 for n = 2");
    }
    if (!(l() > 1.0)) throw std::invalid_argument("MoserParams: iteration ratio l must exceed 1");
}

double moserK(const MoserParams& params, double aNormLq, const BoxDomain& domain) {
    params.validate();
    if (!(aNormLq >= 0.0)) throw std::invalid_argument("moserK: coefficient norm must be >= 0");
    const double N = params.effectiveN();
    const double first = N / ((N - 2.0) * params.qPrime());
    double second;
    if (params.n >= 3) {
        second = sobolevConstant(params.n) * std::sqrt(2.0) * std::sqrt(aNormLq);
    } else {
        second = 4.0 * N / (N - 2.0) * sobolev2Constant() * (1.0 + poincareUpper(domain)) *
                 std::sqrt(2.0) * std::sqrt(aNormLq);
    }
    return std::pow(std::max(first, second), params.kExponent());
}

double linearLinfBound(const MoserParams& params, double uL2, double bInf, double aNormLq,
                       const BoxDomain& domain) {
    if (!(uL2 >= 0.0 && bInf >= 0.0))
        throw std::invalid_argument("linearLinfBound: inputs must be nonnegative");
    const double K = moserK(params, aNormLq, domain);
    return std::pow(2.0 * K, params.qPrime()) * uL2 + 2.0 * K * bInf * (1.0 + domain.volume());
}

double nonlinearKu(const MoserParams& params, double p, double C2, double uDNorm,
                   const BoxDomain& domain) {
    params.validate();
    if (!(p > 1.0)) throw std::invalid_argument("nonlinearKu: requires p > 1");
    const double vol = domain.volume();
    if (params.n >= 3) {
        const int n = params.n;
        if (!(p < (n + 2.0) / (n - 2.0)))
            throw std::invalid_argument("nonlinearKu: supercritical p for n >= 3");
        const double qExpected = 2.0 * n / ((n - 2.0) * (p - 1.0));
        if (std::abs(params.q - qExpected) > 1e-9 * qExpected)
            throw std::invalid_argument("nonlinearKu: q must equal 2n/((n-2)(p-1)) for n >= 3");
        const double cs = sobolevConstant(n);
        const double inner =
            C2 * std::pow(cs, p - 1.0) * std::pow(uDNorm, p - 1.0) + std::pow(vol, 1.0 / params.q);
        const double first = n / ((n - 2.0) * params.qPrime());
        const double second = cs * std::sqrt(2.0) * std::sqrt(inner);
        return std::pow(std::max(first, second), params.kExponent());
    }
    if (!(params.q > std::max(1.0, 2.0 / (p - 1.0))))
        throw std::invalid_argument("nonlinearKu: requires q > max{1, 2/(p-1)} for n = 2");
    const double nh = params.nHat;
    const double cp = poincareUpper(domain);
    const double inner = C2 * std::pow(uDNorm, p - 1.0) + std::pow(vol, 1.0 / params.q);
    const double first = nh / ((nh - 2.0) * params.qPrime());
    const double second =
        4.0 * nh / (nh - 2.0) *
        std::pow(2.0 * sobolev2Constant() * (1.0 + cp) * params.q * (p - 1.0), (p + 1.0) / 2.0) *
        std::sqrt(inner);
    return std::pow(std::max(first, second), params.kExponent());
}

DNormBound dnormApriori(int n, double p, double lambda, double C1, double C2, double C3,
                        const BoxDomain& domain) {
    if (domain.dim() != n) throw std::invalid_argument("dnormApriori: domain dimension mismatch");
    if (n < 2) throw std::invalid_argument("dnormApriori: requires n >= 2");
    const double lambda1 = continuumLambda1(domain);
    if (!(lambda > lambda1))
        throw std::invalid_argument("dnormApriori: requires lambda > lambda_1");
    const double critical = n / (n - 1.0);
    if (!(p > 1.0 && p < critical))
        throw std::invalid_argument("dnormApriori: requires 1 < p < n/(n-1)");
    if (C1 < 0.0 || C2 < 0.0 || C3 < 0.0)
        throw std::invalid_argument("dnormApriori: growth constants must be >= 0");

    DNormBound out;
    out.pTilde = 0.5 * (p + critical);
    out.beta = n * (out.pTilde - 1.0);
    out.alpha1 = p + out.pTilde;
    out.alpha2 = out.pTilde;
    const HSParams hs1{out.alpha1, out.beta, n};
    const HSParams hs2{out.alpha2, out.beta, n};
    hs1.validate();
    hs2.validate();
    const double chs1 = hardySobolevConstant(hs1, domain);
    const double chs2 = hardySobolevConstant(hs2, domain);
    const double vol = domain.volume();
    const double theta = std::pow(
        C1 * lambda1 * vol * vol / ((lambda - lambda1) * std::pow(2.0, n)), out.pTilde - 1.0);
    const double arg = theta * (C2 * chs1 + C3 * chs2);
    out.dNormBound = std::pow(std::max(1.0, arg), 1.0 / (out.pTilde - p));
    return out;
}

std::string NDBoundReport::toJson() const {
    nlohmann::json j{{"n", n},
                     {"p", p},
                     {"lambda", lambda},
                     {"C1", C1},
                     {"C2", C2},
                     {"C3", C3},
                     {"p_tilde", pTilde},
                     {"alpha1", alpha1},
                     {"alpha2", alpha2},
                     {"beta", beta},
                     {"lambda_1", lambda1},
                     {"C_P", cP},
                     {"C_S", cS},
                     {"C_H", cH},
                     {"C_HS_alpha1", cHS1},
                     {"C_HS_alpha2", cHS2},
                     {"d_norm_bound", dNormBound},
                     {"q", q},
                     {"q_prime", qPrime},
                     {"n_hat", nHat},
                     {"K_u", Ku},
                     {"Mbar", Mbar}};
    return j.dump(2);
}

NDBoundReport aprioriBoundNd(int n, double p, double lambda, double C1, double C2, double C3,
                             const BoxDomain& domain) {
    const DNormBound d = dnormApriori(n, p, lambda, C1, C2, C3, domain);
    NDBoundReport report;
    report.n = n;
    report.p = p;
    report.lambda = lambda;
    report.C1 = C1;
    report.C2 = C2;
    report.C3 = C3;
    report.pTilde = d.pTilde;
    report.alpha1 = d.alpha1;
    report.alpha2 = d.alpha2;
    report.beta = d.beta;
    report.dNormBound = d.dNormBound;
    report.lambda1 = continuumLambda1(domain);
    report.cP = poincareUpper(domain);
    report.cS = n >= 3 ? sobolevConstant(n) : sobolev2Constant();
    report.cH = kHardyConstant;
    report.cHS1 = hardySobolevConstant({d.alpha1, d.beta, n}, domain);
    report.cHS2 = hardySobolevConstant({d.alpha2, d.beta, n}, domain);

    const double cp = poincareUpper(domain);
    const double vol = domain.volume();
    auto finish = [&](const MoserParams& params) {
        const double ku = nonlinearKu(params, p, C2, d.dNormBound, domain);
        const double mbar = std::pow(2.0 * ku, params.qPrime()) * cp * d.dNormBound +
                            2.0 * ku * C3 * (1.0 + vol);
        return std::pair{ku, mbar};
    };

    if (n >= 3) {
        MoserParams params{n, 2.0 * n / ((n - 2.0) * (p - 1.0)), 0.0};
        const auto [ku, mbar] = finish(params);
        report.q = params.q;
        report.qPrime = params.qPrime();
        report.nHat = 0.0;
        report.Ku = ku;
        report.Mbar = mbar;
        return report;
    }

    const double qBase = std::max(1.01, 2.0 / (p - 1.0));
    double bestMbar = std::numeric_limits<double>::infinity();
    for (const double qFactor : {1.1, 1.5, 2.0, 4.0}) {
        for (const double nHat : {2.2, 2.5, 3.0, 4.0}) {
            const MoserParams params{2, qBase * qFactor, nHat};
            if (!(params.q > nHat / 2.0)) continue;
            const auto [ku, mbar] = finish(params);
            if (mbar < bestMbar) {
                bestMbar = mbar;
                report.q = params.q;
                report.qPrime = params.qPrime();
                report.nHat = nHat;
                report.Ku = ku;
                report.Mbar = mbar;
            }
        }
    }
    if (!std::isfinite(bestMbar))
        throw std::runtime_error("aprioriBoundNd: no admissible (q, nHat) pair produced a bound");
    return report;
}

double coefficientNormLq(const GridFunction& a, double q) {
    const Mesh& mesh = a.mesh();
    double maxTerm = 0.0;
    visitInterior(mesh, [&](std::span<const int> idx) {
        maxTerm = std::max(maxTerm, std::abs(a.at(idx)) + 1.0);
    });
    double acc = 0.0;
    visitInterior(mesh, [&](std::span<const int> idx) {
        acc += std::pow((std::abs(a.at(idx)) + 1.0) / maxTerm, q);
    });
    return maxTerm * std::pow(acc * mesh.cellVolume(), 1.0 / q);
}

std::vector<MoserTracePoint> moserIterationTrace(const GridFunction& u, const GridFunction& a,
                                                 const GridFunction& b, const MoserParams& params,
                                                 int steps) {
    params.validate();
    const Mesh& mesh = u.mesh();
    if (a.mesh() != mesh || b.mesh() != mesh)
        throw std::invalid_argument("moserIterationTrace: mesh mismatch");
    if (mesh.dim() != params.n)
        throw std::invalid_argument("moserIterationTrace: dimension mismatch");

    // The trace only makes sense for an actual solution of the linear
    // equation; check the stencil residual against its magnitude scale.
    const GridFunction lap = discreteLaplacian(u);
    const double uInf = normLinf(u);
    double stencilScale = 0.0;
    for (int i = 0; i < mesh.dim(); ++i)
        stencilScale += 4.0 * uInf / (mesh.spacing(i) * mesh.spacing(i));
    double worstRel = 0.0;
    visitInterior(mesh, [&](std::span<const int> idx) {
        const double lhs = -lap.at(idx);
        const double rhs = a.at(idx) * u.at(idx) + b.at(idx);
        worstRel = std::max(worstRel, std::abs(lhs - rhs) / (std::abs(rhs) + stencilScale));
    });
    if (worstRel > 1e-8)
        throw std::invalid_argument("moserIterationTrace: residual too large for a solution");

    const GridFunction uPlus = positivePart(u);
    double bInf = 0.0;
    visitInterior(mesh, [&](std::span<const int> idx) {
        bInf = std::max(bInf, std::abs(b.at(idx)));
    });
    double C;
    if (params.n >= 3) {
        C = sobolevConstant(params.n) * std::sqrt(coefficientNormLq(a, params.q));
    } else {
        C = 4.0 * params.nHat / (params.nHat - 2.0) * sobolev2Constant() *
            (1.0 + poincareUpper(mesh.domain())) * std::sqrt(coefficientNormLq(a, params.q));
    }

    std::vector<MoserTracePoint> trace;
    trace.reserve(static_cast<std::size_t>(steps) + 1);
    const double twoQPrime = 2.0 * params.qPrime();
    double tK = 1.0;
    double mTilde = normLp(uPlus, twoQPrime) + bInf * (1.0 + mesh.domain().volume());
    trace.push_back({tK, normLp(uPlus, twoQPrime), mTilde});
    for (int k = 1; k <= steps; ++k) {
        mTilde *= std::pow(tK * std::sqrt(2.0) * C, 1.0 / tK);
        tK *= params.l();
        trace.push_back({tK, normLp(uPlus, twoQPrime * tK), mTilde});
    }
    return trace;
}

}  // namespace fdbvp
