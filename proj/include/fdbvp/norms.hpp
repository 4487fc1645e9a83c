#pragma once

#include "fdbvp/grid.hpp"

namespace fdbvp {

/// The five discrete norms. Lp carries its exponent p >= 1.
struct NormKind {
    enum class Tag { Lp, Linf, D, W12, OrliczA };
    Tag tag = Tag::Lp;
    double p = 2.0;

    static NormKind lp(double p) { return {Tag::Lp, p}; }
    static NormKind linf() { return {Tag::Linf, 0}; }
    static NormKind d() { return {Tag::D, 0}; }
    static NormKind w12() { return {Tag::W12, 0}; }
    static NormKind orliczA() { return {Tag::OrliczA, 0}; }
};

double norm(const GridFunction& u, NormKind kind);

/// ||u||_Lp = (sum over the closed grid of |u|^p * cellVolume)^(1/p).
/// Evaluated in max-factored form so large p stays finite.
double normLp(const GridFunction& u, double p);
double normLinf(const GridFunction& u);
/// Discrete gradient energy: per axis, forward differences over all points
/// off the forward boundary slice, squared, weighted by cellVolume.
double normD(const GridFunction& u);
double normW12(const GridFunction& u);
/// Luxemburg norm for A(t) = e^{t^2} - 1: the minimal k > 0 with
/// sum A(|u|/k) * cellVolume <= 1, located by bisection to relative
/// tolerance 1e-12. Returns 0 for u = 0.
double normOrliczA(const GridFunction& u);

/// sum A(|u|/k) * cellVolume, with overflow short-circuited to +inf.
double orliczSum(const GridFunction& u, double k);

/// Distance-weighted interior sum: sum over interior points of
/// |u|^alpha / dist(x, boundary)^beta * cellVolume. Requires alpha > 0,
/// beta >= 0.
double weightedSum(const GridFunction& u, double alpha, double beta);

GridFunction positivePart(const GridFunction& u);
GridFunction negativePart(const GridFunction& u);

}  // namespace fdbvp
