#include "fdbvp/bounds1d.hpp"

#include "fdbvp/quadrature.hpp"
#include "fdbvp/spectral.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdbvp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCandidateCap = 1e12;
}  // namespace

Growth1D::Growth1D(std::function<double(double)> g, double K) : g_(std::move(g)), K_(K) {
    if (!(K_ > 0.0)) throw std::invalid_argument("Growth1D: requires K > 0");
    anchors_[K_] = 0.0;
}

double Growth1D::G(double s) const {
    auto it = anchors_.lower_bound(s);
    // Pick the nearest anchor on either side.
    double as, av;
    if (it == anchors_.end()) {
        const auto& back = *std::prev(it);
        as = back.first;
        av = back.second;
    } else if (it->first == s) {
        return it->second;
    } else if (it == anchors_.begin()) {
        as = it->first;
        av = it->second;
    } else {
        const auto lo = std::prev(it);
        if (s - lo->first <= it->first - s) {
            as = lo->first;
            av = lo->second;
        } else {
            as = it->first;
            av = it->second;
        }
    }
    const double value = av + integrateAdaptive(g_, as, s, 1e-10, 1e-12);
    anchors_.emplace(s, value);
    if (anchors_.size() > 200000) {
        anchors_.clear();
        anchors_[K_] = 0.0;
    }
    return value;
}

double Growth1D::Gdiff(double s1, double s2) const {
    return integrateAdaptive(g_, s1, s2, 1e-12, 1e-10);
}

void Growth1D::validate() const {
    if (!(g_(0.0) > 0.0)) throw std::invalid_argument("Growth1D: needs g(0) > 0");
    const double hi = std::max(4.0 * K_, 10.0);
    double prev = g_(0.0);
    for (int i = 1; i <= 512; ++i) {
        const double s = hi * i / 512.0;
        const double v = g_(s);
        if (!(v > prev)) throw std::invalid_argument("Growth1D: g is not strictly increasing");
        prev = v;
    }
    double probe = std::max(10.0, 2.0 * K_);
    double prevRatio = probe / std::sqrt(G(probe));
    for (int k = 1; k < 6; ++k) {
        probe *= 10.0;
        const double ratio = probe / std::sqrt(G(probe));
        if (!(ratio < prevRatio))
            throw std::invalid_argument("Growth1D: s/sqrt(G(s)) does not decay on the tail probe");
        prevRatio = ratio;
    }
}

Growth1D Growth1D::cubicPlusOne(double K) {
    return Growth1D([](double s) { return s * s * s + 1.0; }, K);
}

Growth1D Growth1D::powerPlusOne(double p, double K) {
    if (!(p > 1.0)) throw std::invalid_argument("powerPlusOne: requires p > 1");
    return Growth1D([p](double s) { return std::pow(s, p) + 1.0; }, K);
}

ComparisonOutcome comparisonCheck(const GridFunction& w, double lambda0h) {
    const Mesh& mesh = w.mesh();
    if (mesh.dim() != 1) throw std::invalid_argument("comparisonCheck: needs a 1d mesh");
    const double lambda1h = firstEigenpair(mesh).lambda1h;
    if (!(lambda0h < lambda1h)) return ComparisonOutcome::HypothesisViolated;

    const int N = mesh.count(0);
    const double h = mesh.spacing(0);
    const double invH2 = 1.0 / (h * h);
    if (w[0] > 0.0 || w[static_cast<std::size_t>(N)] > 0.0)
        return ComparisonOutcome::HypothesisViolated;
    for (int k = 1; k < N; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const double diff2 = (w[i + 1] - 2.0 * w[i] + w[i - 1]) * invH2;
        const double scale =
            (std::abs(w[i + 1]) + 2.0 * std::abs(w[i]) + std::abs(w[i - 1])) * invH2 +
            std::abs(lambda0h * w[i]);
        if (-diff2 > lambda0h * w[i] + 1e-12 * scale) return ComparisonOutcome::HypothesisViolated;
    }
    double maxW = 0.0, maxAbs = 0.0;
    for (double v : w.values()) {
        maxW = std::max(maxW, v);
        maxAbs = std::max(maxAbs, std::abs(v));
    }
    return maxW <= 1e-12 * std::max(1.0, maxAbs) ? ComparisonOutcome::Holds
                                                 : ComparisonOutcome::Fails;
}

bool comparisonHolds(const GridFunction& w, double lambda0h) {
    switch (comparisonCheck(w, lambda0h)) {
        case ComparisonOutcome::HypothesisViolated:
            throw std::invalid_argument("comparisonHolds: hypothesis violated");
        case ComparisonOutcome::Holds: return true;
        case ComparisonOutcome::Fails: return false;
    }
    return false;
}

double poissonMu(double a, double b, double h) {
    const double s = std::sin(kPi * h / (4.0 * (b - a)));
    return 4.0 / (h * h) * s * s;
}

GridFunction poissonClosedForm(double a, double b, double h, double gamma, double A) {
    if (!(b > a) || !(h > 0.0)) throw std::invalid_argument("poissonClosedForm: bad interval");
    const double ratio = (b - a) / h;
    const int N = static_cast<int>(std::llround(ratio));
    if (N < 2 || std::abs(ratio - N) > 1e-9 * N)
        throw std::invalid_argument("poissonClosedForm: (b-a)/h must be an integer >= 2");
    if (gamma < 0.0 || A < 0.0)
        throw std::invalid_argument("poissonClosedForm: requires gamma, A >= 0");
    Mesh mesh(BoxDomain({a}, {b}), {N});
    const double mu = poissonMu(a, b, h);
    const double shift = A / mu;
    GridFunction v(mesh);
    for (int k = 0; k <= N; ++k) {
        const double arg = kPi * static_cast<double>(k) / (2.0 * static_cast<double>(N));
        v[static_cast<std::size_t>(k)] =
            (gamma - shift) * std::cos(arg) - shift * std::sin(arg) + shift;
    }
    return v;
}

namespace {

// Minimal r in (K, cap] such that pred holds on the certified tail of r:
// a doubling scan finds the first certified octave, then bisection tightens
// it. The certificate samples rho = r*2^j for j = 0..40 plus a dense linear
// grid on [r, 8r].
double tailThreshold(const std::function<bool(double)>& pred, double K,
                     const char* what) {
    auto certified = [&](double r) {
        double rho = r;
        for (int j = 0; j <= 40; ++j) {
            if (!pred(rho)) return false;
            rho *= 2.0;
        }
        for (int i = 1; i <= 256; ++i) {
            if (!pred(r * (1.0 + 7.0 * i / 256.0))) return false;
        }
        return true;
    };
    double hi = 0.0;
    for (double cand = K; cand <= kCandidateCap; cand *= 2.0) {
        if (certified(cand)) {
            hi = cand;
            break;
        }
    }
    if (hi == 0.0)
        throw std::runtime_error(std::string("aprioriBound1d: tail condition for ") + what +
                                 " not certified below 1e12; hypotheses likely violated");
    double lo = std::max(K, hi / 2.0);
    for (int iter = 0; iter < 100 && (hi - lo) > 1e-12 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= K) break;
        if (certified(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace

std::pair<double, double> linearMinorant(const SpaceDependent1D& f, const Growth1D& growth,
                                         double L) {
    if (!(L > 0.0)) throw std::invalid_argument("linearMinorant: requires L > 0");
    const double lambda0 = (kPi / L) * (kPi / L);
    const double K1 = tailThreshold(
        [&](double rho) { return growth.g(rho) >= lambda0 * rho; }, growth.K(),
        "the superlinearity probe g >= lambda0 s");

    constexpr int kScan = 4096;  // dense samples per axis
    const auto gapG = [&](double s) { return lambda0 * s - growth.g(s); };

    // A_g: scan (lambda0 s - g(s))+ over [0, K1], then refine around the peak.
    double Ag = 0.0, AgS = 0.0;
    for (int i = 0; i <= kScan; ++i) {
        const double s = K1 * i / kScan;
        if (const double v = gapG(s); v > Ag) {
            Ag = v;
            AgS = s;
        }
    }
    {
        double lo = std::max(0.0, AgS - K1 / kScan), hi = std::min(K1, AgS + K1 / kScan);
        for (int round = 0; round < 3; ++round) {
            double bestS = AgS;
            for (int i = 0; i <= 64; ++i) {
                const double s = lo + (hi - lo) * i / 64.0;
                if (const double v = gapG(s); v > Ag) {
                    Ag = v;
                    bestS = s;
                }
            }
            const double w = (hi - lo) / 64.0;
            lo = std::max(0.0, bestS - w);
            hi = std::min(K1, bestS + w);
        }
        Ag = std::max(Ag, 0.0);
    }

    // A_f: dense scan of (lambda0 s - f(x,s))+ over [-L, L] x [0, K1], then
    // local refinement around the best cell.
    double Af = 0.0, AfX = -L, AfS = 0.0;
    for (int j = 0; j <= kScan; ++j) {
        const double x = -L + 2.0 * L * j / kScan;
        for (int i = 0; i <= kScan; ++i) {
            const double s = K1 * i / kScan;
            if (const double v = lambda0 * s - f(x, s); v > Af) {
                Af = v;
                AfX = x;
                AfS = s;
            }
        }
    }
    {
        double loX = std::max(-L, AfX - 2.0 * L / kScan), hiX = std::min(L, AfX + 2.0 * L / kScan);
        double loS = std::max(0.0, AfS - K1 / kScan), hiS = std::min(K1, AfS + K1 / kScan);
        for (int round = 0; round < 3; ++round) {
            double bestX = AfX, bestS = AfS;
            for (int j = 0; j <= 32; ++j)
                for (int i = 0; i <= 32; ++i) {
                    const double x = loX + (hiX - loX) * j / 32.0;
                    const double s = loS + (hiS - loS) * i / 32.0;
                    if (const double v = lambda0 * s - f(x, s); v > Af) {
                        Af = v;
                        bestX = x;
                        bestS = s;
                    }
                }
            const double wX = (hiX - loX) / 32.0, wS = (hiS - loS) / 32.0;
            loX = std::max(-L, bestX - wX);
            hiX = std::min(L, bestX + wX);
            loS = std::max(0.0, bestS - wS);
            hiS = std::min(K1, bestS + wS);
        }
        Af = std::max(Af, 0.0);
    }
    return {std::max(Af, Ag), K1};
}

std::pair<double, double> kappaTailCheck(const Growth1D& growth, double R) {
    if (!(R > growth.K())) throw std::invalid_argument("kappaTailCheck: requires R > K");
    const double GR = growth.G(R);
    const double delta = 0.1 * R;
    const double gR = growth.g(R);
    const auto denom = [&](double s) { return std::sqrt(growth.Gdiff(s, R)); };
    const double part1 = integrateAdaptive([&](double s) { return 1.0 / denom(s); }, 0.0,
                                           R - delta, 1e-8, 1e-10, 40);
    const double part2 = integrateAdaptive(
        [&](double t) {
            if (t == 0.0) return 2.0 / std::sqrt(gR);  // limit of 2t/sqrt(G(R)-G(R-t^2))
            const double s = R - t * t;
            return 2.0 * t / denom(s);
        },
        0.0, std::sqrt(delta), 1e-8, 1e-10, 40);
    return {part1 + part2, 2.0 * R / std::sqrt(GR)};
}

std::string Bound1DReport::toJson() const {
    nlohmann::json j{{"lambda0", lambda0}, {"A", A},           {"K1", K1},
                     {"R1", R1},           {"Rbound", Rbound}, {"Mbar", Mbar}};
    return j.dump(2);
}

Bound1DReport aprioriBound1d(const SpaceDependent1D& f, const Growth1D& growth, double L) {
    growth.validate();
    Bound1DReport report;
    report.lambda0 = (kPi / L) * (kPi / L);
    const auto [A, K1] = linearMinorant(f, growth, L);
    report.A = A;
    report.K1 = K1;
    const double K = growth.K();
    report.R1 = tailThreshold(
        [&](double rho) { return 2.0 * rho / std::sqrt(growth.G(rho)) <= L / 2.0; }, K,
        "2 rho/sqrt(G) <= L/2");
    const double target = growth.G(K) / (K * K) +
                          std::pow(kPi / L + A * kPi * L / (2.0 * K), 2.0);
    report.Rbound = tailThreshold(
        [&](double rho) { return growth.G(rho) / (rho * rho) > target; }, K,
        "G(rho)/rho^2 > G(K)/K^2 + (pi/L + A pi L/(2K))^2");
    report.Mbar = 2.0 * std::max(report.R1, report.Rbound) + A * L * L / 16.0;
    return report;
}

}  // namespace fdbvp
