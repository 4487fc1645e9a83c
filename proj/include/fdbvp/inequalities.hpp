#pragma once

#include "fdbvp/grid.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>

namespace fdbvp {

/// Poincare constants of the box: lower = 1/sqrt(lambda_{1,h}) (optimal,
/// mesh-dependent) and upper = (1/(2n)) sqrt(sum (b_i - a_i)^2)
/// (mesh-independent). Always lower <= upper.
std::pair<double, double> poincareConstant(const Mesh& mesh);

/// Mesh-independent Poincare constant used wherever an h-free constant is
/// required: the upper bound of the pair above.
double poincareUpper(const BoxDomain& domain);

/// C_S(n) = 4(n-1)/(sqrt(n)(n-2)) for n >= 3; always <= 5.
double sobolevConstant(int n);

/// C_S(2) = 8 sqrt(2 pi (e + 256)).
double sobolev2Constant();

/// Admissible exponent pair for the Hardy-Sobolev inequality.
struct HSParams {
    double alpha = 2.0;
    double beta = 0.0;
    int n = 2;

    /// Throws naming the violated condition: 0 <= beta < 2, beta <= alpha,
    /// and alpha <= (2n - 2 beta)/(n - 2) when n >= 3.
    void validate() const;
};

/// Hardy constant for boxes: any value in (0, 4] works; 4 is used throughout.
inline constexpr double kHardyConstant = 4.0;

double hardySobolevConstant(const HSParams& params, const BoxDomain& domain);

struct InequalityReport {
    std::string name;
    double constantUsed = 0.0;
    int samplesTested = 0;
    double worstRatio = 0.0;  // max over samples of LHS/RHS; passing means <= 1
    std::uint64_t worstSampleSeed = 0;

    std::string toJson() const;
};

/// Which inequality to stress and its parameters.
struct InequalitySpec {
    enum class Kind { Poincare, Hardy, SobolevN, Sobolev2Orlicz, Sobolev2Lp, HardySobolev };
    Kind kind = Kind::Poincare;
    double p = 4.0;      // Sobolev2Lp exponent, >= 2
    double alpha = 2.0;  // HardySobolev
    double beta = 0.0;

    static InequalitySpec parse(const std::string& name, double p = 4.0, double alpha = 2.0,
                                double beta = 0.0);
    std::string name() const;
};

/// Evaluates the inequality on `samples` random fields plus the three
/// deterministic adversaries (eigenfunction, distance cone, point mass).
/// Sample k >= 3 uses the RNG stream seeded with seed + k; adversaries are
/// samples 0..2 and reported with that index as their seed.
InequalityReport checkInequality(const InequalitySpec& spec, const Mesh& mesh, int samples,
                                 std::uint64_t seed);

/// Complete homogeneous symmetric polynomial sum_{i+j+k=p} a^i b^j c^k:
/// the exact value of the three-point divided difference
/// ((b^{p+2}-a^{p+2})/(b-a) - (c^{p+2}-a^{p+2})/(c-a)) / (b-c),
/// including all coincident-argument limits. Satisfies
/// a^p + b^p + c^p <= value <= (p+1)(p+2)(a^p + b^p + c^p) for a,b,c >= 0.
double tripleTerm(double a, double b, double c, int p);

/// (y^{2s+1} - z^{2s+1})(y - z) / (y^{s+1} - z^{s+1})^2 for s,y,z >= 0,
/// with the coincident limit (2s+1)/(s+1)^2 at y = z; stays >= 1/(s+1).
double powerRatio(double s, double y, double z);

/// Two-sided discrete Hardy data for a half-line sequence with u(0) = 0:
/// lhs = sum_{k>=1} u(kh)^2/(kh)^2, rhs = 4 sum (D_h^+ u)^2. lhs <= rhs.
std::pair<double, double> hardy1dSequenceCheck(std::span<const double> values, double h = 1.0);

}  // namespace fdbvp
