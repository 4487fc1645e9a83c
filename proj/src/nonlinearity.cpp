#include "fdbvp/nonlinearity.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

namespace fdbvp {

void Nonlinearity::spotCheckMetadata(const BoxDomain& domain) const {
    if (!metadata.present) throw std::invalid_argument("spotCheckMetadata: no metadata");
    const int n = domain.dim();
    std::vector<double> x(n);
    constexpr int kXSamples = 9;
    constexpr int kSSamples = 200;
    std::vector<int> digits(n, 0);
    for (;;) {
        for (int i = 0; i < n; ++i)
            x[i] = domain.lower(i) + domain.edge(i) * (digits[i] + 0.5) / kXSamples;
        for (int j = 0; j <= kSSamples; ++j) {
            const double s = 1000.0 * std::pow(static_cast<double>(j) / kSSamples, 3);
            const double v = f(x, s);
            const double lower = metadata.lambda * s - metadata.C1;
            const double upper = metadata.C2 * std::pow(s, metadata.p) + metadata.C3;
            const double slack = 1e-9 * (1.0 + std::abs(v) + std::abs(lower) + std::abs(upper));
            if (v < lower - slack)
                throw std::invalid_argument("metadata: f(x,s) >= lambda s - C1 fails at a sample");
            if (v > upper + slack)
                throw std::invalid_argument("metadata: f(x,s) <= C2 s^p + C3 fails at a sample");
        }
        int axis = n - 1;
        while (axis >= 0 && ++digits[axis] == kXSamples) digits[axis--] = 0;
        if (axis < 0) break;
    }
}

double minorantGapScan(double lambda, const std::function<double(double)>& f) {
    // Grow the range until lambda s - f(s) has been negative for a while.
    double sMax = 1.0;
    for (int tries = 0; tries < 60; ++tries) {
        if (lambda * sMax - f(sMax) < 0.0 && lambda * (0.5 * sMax) - f(0.5 * sMax) < 0.0) break;
        sMax *= 2.0;
    }
    sMax *= 2.0;
    constexpr int kScan = 4096;
    double best = 0.0, bestS = 0.0;
    for (int i = 0; i <= kScan; ++i) {
        const double s = sMax * i / kScan;
        const double v = lambda * s - f(s);
        if (v > best) {
            best = v;
            bestS = s;
        }
    }
    double lo = std::max(0.0, bestS - sMax / kScan), hi = bestS + sMax / kScan;
    for (int round = 0; round < 4; ++round) {
        double rBestS = bestS;
        for (int i = 0; i <= 64; ++i) {
            const double s = lo + (hi - lo) * i / 64.0;
            const double v = lambda * s - f(s);
            if (v > best) {
                best = v;
                rBestS = s;
            }
        }
        const double w = (hi - lo) / 64.0;
        lo = std::max(0.0, rBestS - w);
        hi = rBestS + w;
    }
    return best;
}

namespace {

Nonlinearity makeForm(const std::string& id, const std::string& form, const nlohmann::json& params) {
    Nonlinearity nl;
    nl.id = id;
    if (form == "power") {
        const double c2 = params.value("c2", 1.0);
        const double p = params.at("p").get<double>();
        nl.f = [c2, p](std::span<const double>, double s) { return c2 * std::pow(s, p); };
        nl.dfds = [c2, p](std::span<const double>, double s) {
            return s <= 0.0 ? 0.0 : c2 * p * std::pow(s, p - 1.0);
        };
    } else if (form == "power_plus_const") {
        const double c2 = params.value("c2", 1.0);
        const double p = params.at("p").get<double>();
        const double c3 = params.value("c3", 1.0);
        nl.f = [c2, p, c3](std::span<const double>, double s) { return c2 * std::pow(s, p) + c3; };
        nl.dfds = [c2, p](std::span<const double>, double s) {
            return s <= 0.0 ? 0.0 : c2 * p * std::pow(s, p - 1.0);
        };
    } else if (form == "cubic_plus_one") {
        nl.f = [](std::span<const double>, double s) { return s * s * s + 1.0; };
        nl.dfds = [](std::span<const double>, double s) { return 3.0 * s * s; };
        nl.minorant = Growth1D::cubicPlusOne(params.value("K", 1.0));
    } else if (form == "affine") {
        const double a = params.value("a", 0.0);
        const double b = params.value("b", 1.0);
        nl.f = [a, b](std::span<const double>, double s) { return a * s + b; };
        nl.dfds = [a](std::span<const double>, double) { return a; };
    } else {
        throw std::invalid_argument("nonlinearity form unknown: " + form);
    }
    return nl;
}

}  // namespace

Nonlinearity nonlinearityFromJson(const std::string& configJson) {
    const nlohmann::json j = nlohmann::json::parse(configJson);
    const std::string form = j.at("form").get<std::string>();
    const std::string id = j.value("id", form);
    Nonlinearity nl = makeForm(id, form, j.value("params", nlohmann::json::object()));
    if (j.contains("metadata")) {
        const auto& md = j.at("metadata");
        nl.metadata.lambda = md.value("lambda", 0.0);
        nl.metadata.C2 = md.value("C2", 1.0);
        nl.metadata.C3 = md.value("C3", 0.0);
        nl.metadata.p = md.value("p", 1.0);
        if (md.contains("C1") && md.at("C1").is_string()) {
            if (md.at("C1").get<std::string>() != "scan")
                throw std::invalid_argument("metadata.C1: only \"scan\" is understood");
            auto f1d = [&nl](double s) { return nl.f(std::span<const double>{}, s); };
            nl.metadata.C1 = minorantGapScan(nl.metadata.lambda, f1d);
        } else {
            nl.metadata.C1 = md.value("C1", 0.0);
        }
        nl.metadata.present = true;
    }
    if (j.contains("minorant")) {
        const auto& mn = j.at("minorant");
        const std::string gForm = mn.value("form", "cubic_plus_one");
        const double K = mn.value("K", 1.0);
        if (gForm == "cubic_plus_one")
            nl.minorant = Growth1D::cubicPlusOne(K);
        else if (gForm == "power_plus_one")
            nl.minorant = Growth1D::powerPlusOne(mn.value("p", 3.0), K);
        else
            throw std::invalid_argument("minorant form unknown: " + gForm);
    }
    return nl;
}

Nonlinearity builtinNonlinearity(const std::string& id) {
    if (id == "cubic_plus_one")
        return nonlinearityFromJson(R"({"id":"cubic_plus_one","form":"cubic_plus_one"})");
    if (id == "power15_plus_one")
        return nonlinearityFromJson(
            R"({"id":"power15_plus_one","form":"power_plus_const","params":{"c2":1.0,"p":1.5,"c3":1.0}})");
    if (id == "power3")
        return nonlinearityFromJson(
            R"({"id":"power3","form":"power","params":{"c2":1.0,"p":3.0},
                "metadata":{"lambda":0.0,"C1":0.0,"C2":1.0,"C3":0.0,"p":3.0}})");
    if (id == "linear_unit")
        return nonlinearityFromJson(R"({"id":"linear_unit","form":"affine","params":{"a":0.0,"b":1.0}})");
    throw std::invalid_argument("unknown builtin nonlinearity: " + id);
}

}  // namespace fdbvp
