#pragma once

#include <functional>

namespace fdbvp {

/// Adaptive Simpson integration of f over [a, b]. Subdivision stops when a
/// panel's Richardson estimate is below max(absTol, relTol * |panel value|),
/// or at maxDepth.
double integrateAdaptive(const std::function<double(double)>& f, double a, double b,
                         double absTol, double relTol = 1e-12, int maxDepth = 48);

}  // namespace fdbvp
