#pragma once

#include "fdbvp/grid.hpp"

#include <cstdint>
#include <random>

namespace fdbvp {

/// Deterministic 64-bit-to-double mapping, uniform on [0,1).
double uniform01(std::mt19937_64& rng);
/// Uniform on [lo, hi).
double uniformIn(std::mt19937_64& rng, double lo, double hi);

/// A margin of m zeroes every point whose index is within m grid steps of
/// the boundary on some axis. Margin 1 is plain zero boundary data; margin
/// >= 2 leaves an interior zero collar, so the function is compactly
/// supported inside the box and whole-space sums coincide with mesh sums.
GridFunction applyMargin(GridFunction u, int margin);

/// i.i.d. uniform[-1,1] values on the allowed index range, zero elsewhere.
GridFunction randomUniformField(const Mesh& mesh, int margin, std::mt19937_64& rng);

/// Smooth bump exp(-1/(1 - r^2)) with r = |2(x - m)/w| sampled on the grid,
/// random center and width, masked to the margin.
GridFunction randomBumpField(const Mesh& mesh, int margin, std::mt19937_64& rng);

/// Mixes the two generators (rough and smooth regimes).
GridFunction randomField(const Mesh& mesh, int margin, std::uint64_t sampleSeed);

/// Deterministic adversaries: the first eigenfunction, the distance cone
/// dist(x, boundary), and a single interior point mass, each masked to the
/// margin.
GridFunction adversaryEigenfunction(const Mesh& mesh, int margin);
GridFunction adversaryDistanceCone(const Mesh& mesh, int margin);
GridFunction adversaryPointMass(const Mesh& mesh, int margin);

}  // namespace fdbvp
