#include "fdbvp/quadrature.hpp"

#include <cmath>

namespace fdbvp {

namespace {

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double absTol, double relTol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    const double tol = std::max(absTol, relTol * std::abs(left + right));
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * absTol, relTol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * absTol, relTol, depth - 1);
}

}  // namespace

double integrateAdaptive(const std::function<double(double)>& f, double a, double b,
                         double absTol, double relTol, int maxDepth) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, a, b);
    return adapt(f, a, b, fa, fm, fb, whole, absTol, relTol, maxDepth);
}

}  // namespace fdbvp
