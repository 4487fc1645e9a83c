#include "fdbvp/inequalities.hpp"

#include "fdbvp/norms.hpp"
#include "fdbvp/random_fields.hpp"
#include "fdbvp/spectral.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdbvp {

std::pair<double, double> poincareConstant(const Mesh& mesh) {
    const double lower = 1.0 / std::sqrt(firstEigenpair(mesh).lambda1h);
    return {lower, poincareUpper(mesh.domain())};
}

double poincareUpper(const BoxDomain& domain) {
    double sumSq = 0.0;
    for (int i = 0; i < domain.dim(); ++i) sumSq += domain.edge(i) * domain.edge(i);
    return std::sqrt(sumSq) / (2.0 * domain.dim());
}

double sobolevConstant(int n) {
    if (n < 3) throw std::invalid_argument("sobolevConstant: requires n >= 3");
    const double c = 4.0 * (n - 1) / (std::sqrt(static_cast<double>(n)) * (n - 2));
    if (!(c <= 5.0)) throw std::logic_error("sobolevConstant: exceeded its ceiling of 5");
    return c;
}

double sobolev2Constant() {
    return 8.0 * std::sqrt(2.0 * std::numbers::pi * (std::numbers::e + 256.0));
}

void HSParams::validate() const {
    if (!(beta >= 0.0 && beta < 2.0))
        throw std::invalid_argument("HSParams: needs 0 <= beta < 2");
    if (!(beta <= alpha)) throw std::invalid_argument("HSParams: needs beta <= alpha");
    if (n < 2) throw std::invalid_argument("HSParams: needs n >= 2");
    if (n >= 3 && !(alpha <= (2.0 * n - 2.0 * beta) / (n - 2)))
        throw std::invalid_argument("HSParams: needs alpha <= (2n - 2 beta)/(n - 2) for n >= 3");
}

double hardySobolevConstant(const HSParams& params, const BoxDomain& domain) {
    params.validate();
    if (domain.dim() != params.n)
        throw std::invalid_argument("hardySobolevConstant: domain dimension mismatch");
    const double a = params.alpha, b = params.beta;
    if (params.n >= 3) {
        const int n = params.n;
        return std::pow(kHardyConstant, b / 2.0) * std::pow(sobolevConstant(n), a - b) *
               std::pow(domain.volume(), (2.0 * (n - b) - (n - 2) * a) / (2.0 * n));
    }
    const double cp = poincareUpper(domain);
    return std::pow(kHardyConstant, b / 2.0) * std::pow(sobolev2Constant(), a - b) *
           std::pow(4.0 * (a - b) / (2.0 - b), a - b) * std::pow(1.0 + cp * cp, (a - b) / 2.0);
}

std::string InequalityReport::toJson() const {
    nlohmann::json j{{"name", name},
                     {"constant_used", constantUsed},
                     {"samples_tested", samplesTested},
                     {"worst_ratio", worstRatio},
                     {"worst_sample_seed", worstSampleSeed},
                     {"passed", worstRatio <= 1.0}};
    return j.dump(2);
}

InequalitySpec InequalitySpec::parse(const std::string& name, double p, double alpha, double beta) {
    InequalitySpec spec;
    spec.p = p;
    spec.alpha = alpha;
    spec.beta = beta;
    if (name == "poincare")
        spec.kind = Kind::Poincare;
    else if (name == "hardy")
        spec.kind = Kind::Hardy;
    else if (name == "sobolev_n")
        spec.kind = Kind::SobolevN;
    else if (name == "sobolev_2_orlicz")
        spec.kind = Kind::Sobolev2Orlicz;
    else if (name == "sobolev_2_lp")
        spec.kind = Kind::Sobolev2Lp;
    else if (name == "hardy_sobolev")
        spec.kind = Kind::HardySobolev;
    else
        throw std::invalid_argument("unknown inequality name: " + name);
    return spec;
}

std::string InequalitySpec::name() const {
    switch (kind) {
        case Kind::Poincare: return "poincare";
        case Kind::Hardy: return "hardy";
        case Kind::SobolevN: return "sobolev_n";
        case Kind::Sobolev2Orlicz: return "sobolev_2_orlicz";
        case Kind::Sobolev2Lp: return "sobolev_2_lp";
        case Kind::HardySobolev: return "hardy_sobolev";
    }
    return "?";
}

namespace {

struct RatioCase {
    double constant = 0.0;
    int margin = 1;
    // Returns LHS/RHS for one sample.
    std::function<double(const GridFunction&)> ratio;
};

RatioCase makeCase(const InequalitySpec& spec, const Mesh& mesh) {
    using Kind = InequalitySpec::Kind;
    const int n = mesh.dim();
    switch (spec.kind) {
        case Kind::Poincare: {
            const double cp = poincareUpper(mesh.domain());
            return {cp, 1, [cp](const GridFunction& u) {
                        return normLp(u, 2.0) / (cp * normD(u));
                    }};
        }
        case Kind::Hardy:
            return {kHardyConstant, 1, [](const GridFunction& u) {
                        const double d = normD(u);
                        return weightedSum(u, 2.0, 2.0) / (kHardyConstant * d * d);
                    }};
        case Kind::SobolevN: {
            if (n < 3) throw std::invalid_argument("sobolev_n needs a mesh of dimension >= 3");
            const double cs = sobolevConstant(n);
            const double pStar = 2.0 * n / (n - 2.0);
            return {cs, 2, [cs, pStar](const GridFunction& u) {
                        return normLp(u, pStar) / (cs * normD(u));
                    }};
        }
        case Kind::Sobolev2Orlicz: {
            if (n != 2) throw std::invalid_argument("sobolev_2_orlicz needs a 2d mesh");
            const double cs = sobolev2Constant();
            return {cs, 2, [cs](const GridFunction& u) {
                        return orliczSum(u, cs * normW12(u));
                    }};
        }
        case Kind::Sobolev2Lp: {
            if (n != 2) throw std::invalid_argument("sobolev_2_lp needs a 2d mesh");
            if (!(spec.p >= 2.0)) throw std::invalid_argument("sobolev_2_lp needs p >= 2");
            const double cs = sobolev2Constant();
            const double p = spec.p;
            return {2.0 * cs * p, 2, [cs, p](const GridFunction& u) {
                        return normLp(u, p) / (2.0 * cs * p * normW12(u));
                    }};
        }
        case Kind::HardySobolev: {
            HSParams params{spec.alpha, spec.beta, n};
            const double chs = hardySobolevConstant(params, mesh.domain());
            const double a = spec.alpha, b = spec.beta;
            return {chs, 1, [chs, a, b](const GridFunction& u) {
                        return weightedSum(u, a, b) / (chs * std::pow(normD(u), a));
                    }};
        }
    }
    throw std::logic_error("makeCase: unreachable");
}

}  // namespace

InequalityReport checkInequality(const InequalitySpec& spec, const Mesh& mesh, int samples,
                                 std::uint64_t seed) {
    const RatioCase rc = makeCase(spec, mesh);
    InequalityReport report;
    report.name = spec.name();
    report.constantUsed = rc.constant;
    report.worstRatio = 0.0;

    auto consider = [&](const GridFunction& u, std::uint64_t sampleSeed) {
        if (normLinf(u) == 0.0) return;  // margin can wipe out degenerate samples
        const double r = rc.ratio(u);
        ++report.samplesTested;
        if (r > report.worstRatio) {
            report.worstRatio = r;
            report.worstSampleSeed = sampleSeed;
        }
    };

    consider(adversaryEigenfunction(mesh, rc.margin), 0);
    consider(adversaryDistanceCone(mesh, rc.margin), 1);
    consider(adversaryPointMass(mesh, rc.margin), 2);
    for (int k = 0; k < samples; ++k) {
        const std::uint64_t sampleSeed = seed + 3 + static_cast<std::uint64_t>(k);
        consider(randomField(mesh, rc.margin, sampleSeed), sampleSeed);
    }
    return report;
}

double tripleTerm(double a, double b, double c, int p) {
    if (p < 0) throw std::invalid_argument("tripleTerm: requires p >= 0");
    // Horner-style accumulation over k of c^k * h_{p-k}(a,b), with
    // h_m(a,b) = sum_{i<=m} a^i b^{m-i}.
    double acc = 0.0;
    double ck = 1.0;
    for (int k = 0; k <= p; ++k) {
        const int m = p - k;
        double hab = 0.0;
        double ai = 1.0;
        for (int i = 0; i <= m; ++i) {
            hab += ai * std::pow(b, m - i);
            ai *= a;
        }
        acc += ck * hab;
        ck *= c;
    }
    return acc;
}

double powerRatio(double s, double y, double z) {
    if (!(s >= 0.0 && y >= 0.0 && z >= 0.0))
        throw std::invalid_argument("powerRatio: requires s, y, z >= 0");
    const double scale = std::max(y, z);
    if (scale == 0.0) return 1.0;  // limit along y = z -> 0+
    if (std::abs(y - z) <= 1e-9 * scale)
        return (2.0 * s + 1.0) / ((s + 1.0) * (s + 1.0));
    const double num = (std::pow(y, 2.0 * s + 1.0) - std::pow(z, 2.0 * s + 1.0)) * (y - z);
    const double den = std::pow(y, s + 1.0) - std::pow(z, s + 1.0);
    return num / (den * den);
}

std::pair<double, double> hardy1dSequenceCheck(std::span<const double> values, double h) {
    if (values.empty() || values[0] != 0.0)
        throw std::invalid_argument("hardy1dSequenceCheck: sequence must start at 0");
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t k = 1; k < values.size(); ++k) {
        const double x = static_cast<double>(k) * h;
        lhs += values[k] * values[k] / (x * x);
        const double d = (values[k] - values[k - 1]) / h;
        rhs += d * d;
    }
    return {lhs, 4.0 * rhs};
}

}  // namespace fdbvp
