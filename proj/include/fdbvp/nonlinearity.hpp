#pragma once

#include "fdbvp/bounds1d.hpp"
#include "fdbvp/grid.hpp"

#include <functional>
#include <optional>
#include <string>

namespace fdbvp {

/// Right-hand side f(x, s) of -Delta_h u = f(x, u) with the growth metadata
/// the bound pipelines consume. The solver itself only evaluates f and its
/// s-derivative.
struct Nonlinearity {
    std::string id;
    std::function<double(std::span<const double> x, double s)> f;
    std::function<double(std::span<const double> x, double s)> dfds;

    struct Metadata {
        double lambda = 0.0;  // f(x,s) >= lambda s - C1
        double C1 = 0.0;
        double C2 = 0.0;  // f(x,s) <= C2 s^p + C3
        double C3 = 0.0;
        double p = 0.0;
        bool present = false;
    } metadata;

    std::optional<Growth1D> minorant;  // 1d bound data: g, K with f >= g above K

    /// Spot-checks the two growth inequalities on a sample grid over the
    /// domain and s in [0, 1e3]; throws on a violation.
    void spotCheckMetadata(const BoxDomain& domain) const;
};

/// Builds a nonlinearity from a registry object:
///   {"id": ..., "form": "power" | "power_plus_const" | "cubic_plus_one" |
///    "affine", "params": {...}, "metadata": {...}}.
/// Forms: power        f = c2 * s^p          (params c2, p)
///        power_plus_const f = c2 * s^p + c3 (params c2, p, c3)
///        cubic_plus_one   f = s^3 + 1       (params K for the minorant)
///        affine           f = a * s + b     (params a, b)
/// metadata.C1 may be the string "scan", in which case C1 is computed as
/// max_s (lambda s - f(s))+ by a dense scan (x-independent forms only).
/// Negative s never reaches f: the solver feeds s+ everywhere.
Nonlinearity nonlinearityFromJson(const std::string& configJson);

/// Built-in instances by id: "cubic_plus_one", "power15_plus_one"
/// (s^1.5 + 1), "power3" (s^3), "linear_unit" (constant 1).
Nonlinearity builtinNonlinearity(const std::string& id);

/// max over s in [0, sMax-ish] of (lambda s - f(s))+, located by a dense
/// scan with local refinement; the scan range is grown until the gap has
/// clearly turned negative.
double minorantGapScan(double lambda, const std::function<double(double)>& f);

}  // namespace fdbvp
