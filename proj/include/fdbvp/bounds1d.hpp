#pragma once

#include "fdbvp/grid.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>

namespace fdbvp {

/// Superlinear 1d minorant data: g strictly increasing with g(0) > 0, the
/// anchor K > 0, and G(s) = integral of g from K to s (negative below K).
/// G is evaluated by adaptive quadrature from the nearest cached anchor, so
/// repeated scans stay cheap and monotone-consistent.
class Growth1D {
public:
    Growth1D(std::function<double(double)> g, double K);

    double g(double s) const { return g_(s); }
    double K() const { return K_; }
    double G(double s) const;
    /// integral of g over [s1, s2], resolved relative to its own size.
    double Gdiff(double s1, double s2) const;

    /// Checks g(0) > 0, strict increase on a sample grid, and the decay of
    /// s/sqrt(G(s)) on a geometric tail probe. Throws naming the violation.
    void validate() const;

    static Growth1D cubicPlusOne(double K = 1.0);
    static Growth1D powerPlusOne(double p, double K = 1.0);

private:
    std::function<double(double)> g_;
    double K_ = 1.0;
    mutable std::map<double, double> anchors_;  // s -> G(s)
};

enum class ComparisonOutcome { HypothesisViolated, Holds, Fails };

/// Discrete elliptic comparison oracle: given w on a 1d mesh satisfying
/// -D+D- w <= lambda0h * w on the interior and w <= 0 at both ends with
/// lambda0h < lambda_{1,h}, the conclusion is w <= 0 everywhere.
/// HypothesisViolated is reported separately from a conclusion failure.
ComparisonOutcome comparisonCheck(const GridFunction& w, double lambda0h);
/// Same, but throws std::invalid_argument on hypothesis violation.
bool comparisonHolds(const GridFunction& w, double lambda0h);

/// Closed-form solution of -D+D- v = mu v - A on (a,b)_h with v(a) = gamma,
/// v(b) = 0 and mu = (4/h^2) sin^2(pi h / (4(b-a))):
///   v(x) = (gamma - A/mu) cos(pi (x-a)/(2(b-a)))
///          - (A/mu) sin(pi (x-a)/(2(b-a))) + A/mu.
/// Also satisfies -D+ v(a) <= (gamma + (b-a)^2 A) pi / (2(b-a)).
GridFunction poissonClosedForm(double a, double b, double h, double gamma, double A);

/// mu = (4/h^2) sin^2(pi h/(4(b-a))) used by the closed form; always below
/// the first eigenvalue of the interval.
double poissonMu(double a, double b, double h);

using SpaceDependent1D = std::function<double(double x, double s)>;

/// Linear minorant data of the 1d bound pipeline on (-L, L): with
/// lambda0 = (pi/L)^2, finds K1 >= K past which g(s) >= lambda0 s
/// (certified on a geometric tail grid) and A = max(A_f, A_g), the dense-
/// sampled maxima of (lambda0 s - g(s))+ over [0, K1] and of
/// (lambda0 s - f(x,s))+ over [-L, L] x [0, K1]. Returns (A, K1).
std::pair<double, double> linearMinorant(const SpaceDependent1D& f, const Growth1D& growth,
                                         double L);

/// integral of ds/sqrt(G(R) - G(s)) over [0, R] (the singular end handled
/// by the substitution s = R - t^2) and its certified bound 2R/sqrt(G(R)).
std::pair<double, double> kappaTailCheck(const Growth1D& growth, double R);

struct Bound1DReport {
    double lambda0 = 0.0;
    double A = 0.0;
    double K1 = 0.0;
    double R1 = 0.0;
    double Rbound = 0.0;
    double Mbar = 0.0;

    std::string toJson() const;
};

/// The executable 1d a priori bound on Omega = (-L, L): every non-negative
/// mesh solution with L >= 4h obeys ||u||_inf <= Mbar, where
///   R1     = min{ r > K : 2 rho/sqrt(G(rho)) <= L/2 for all rho >= r },
///   Rbound = min{ r > K : G(rho)/rho^2 > G(K)/K^2
///                         + (pi/L + A pi L/(2K))^2 for all rho > r },
///   Mbar   = 2 max(R1, Rbound) + A L^2 / 16.
/// The "for all larger rho" sets are certified on geometric grids after a
/// doubling scan plus bisection; candidates are capped at 1e12.
Bound1DReport aprioriBound1d(const SpaceDependent1D& f, const Growth1D& growth, double L);

}  // namespace fdbvp
