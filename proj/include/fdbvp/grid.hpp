#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fdbvp {

/// An open n-dimensional box (a_1,b_1) x ... x (a_n,b_n).
class BoxDomain {
public:
    BoxDomain(std::vector<double> lower, std::vector<double> upper);

    int dim() const { return static_cast<int>(lower_.size()); }
    double lower(int axis) const { return lower_[axis]; }
    double upper(int axis) const { return upper_[axis]; }
    double edge(int axis) const { return upper_[axis] - lower_[axis]; }
    /// |Omega| = prod_i (b_i - a_i).
    double volume() const;

    bool operator==(const BoxDomain&) const = default;

private:
    std::vector<double> lower_, upper_;
};

/// Classification of a closed-grid point. A point may touch several
/// boundary faces at once (edges and corners of the box).
struct PointClass {
    bool interior = false;
    std::vector<int> forwardAxes;   // axes i with x_i = b_i
    std::vector<int> backwardAxes;  // axes i with x_i = a_i

    bool boundary() const { return !interior; }
};

/// Uniform tensor grid over the closed box. Each axis i is split into
/// N_i >= 2 subintervals of width h_i = (b_i - a_i)/N_i, giving N_i + 1
/// closed-grid points per axis. Storage order of grid functions is
/// lexicographic row-major (last axis fastest). Coordinates are always
/// recomputed as a_i + k*h_i from the integer index, never accumulated.
class Mesh {
public:
    Mesh(BoxDomain domain, std::vector<int> counts);

    const BoxDomain& domain() const { return domain_; }
    int dim() const { return domain_.dim(); }
    int count(int axis) const { return counts_[axis]; }
    const std::vector<int>& counts() const { return counts_; }
    double spacing(int axis) const { return h_[axis]; }
    const std::vector<double>& spacings() const { return h_; }
    /// Cell volume weight: prod_i h_i.
    double cellVolume() const { return cellVolume_; }
    double maxSpacing() const;

    /// Number of points of the closed grid, prod_i (N_i + 1).
    std::size_t pointCount() const { return pointCount_; }
    /// Number of interior grid points, prod_i (N_i - 1).
    std::size_t interiorCount() const;

    /// Coordinate of index k along an axis: a_i + k*h_i.
    double coordinate(int axis, int k) const;

    std::size_t flatten(std::span<const int> idx) const;
    void unflatten(std::size_t flat, std::span<int> idx) const;

    bool isInterior(std::span<const int> idx) const;
    /// Interior/boundary tags for a closed-grid index; throws on
    /// out-of-range indices.
    PointClass classify(std::span<const int> idx) const;

    /// dist(x, boundary) = min_i min(x_i - a_i, b_i - x_i), evaluated in
    /// exact integer arithmetic as min_i min(k_i, N_i - k_i)*h_i.
    /// Zero for boundary points; callers dividing by it must guard.
    double distToBoundary(std::span<const int> idx) const;

    bool operator==(const Mesh&) const = default;

private:
    BoxDomain domain_;
    std::vector<int> counts_;
    std::vector<double> h_;
    std::vector<std::size_t> strides_;
    std::size_t pointCount_ = 0;
    double cellVolume_ = 1.0;
};

/// Real values on the closed grid of a mesh, in lexicographic order.
/// Immutable by convention: operations return new functions.
class GridFunction {
public:
    explicit GridFunction(Mesh mesh);
    GridFunction(Mesh mesh, std::vector<double> values);

    const Mesh& mesh() const { return mesh_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t flat) const { return values_[flat]; }
    double& operator[](std::size_t flat) { return values_[flat]; }
    double at(std::span<const int> idx) const { return values_[mesh_.flatten(idx)]; }
    double& at(std::span<const int> idx) { return values_[mesh_.flatten(idx)]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Throws if any entry is non-finite. Used at API boundaries.
    void requireFinite() const;

    /// One row per point: index per axis, coordinates per axis, value.
    std::string toCsv() const;
    static GridFunction fromCsv(const Mesh& mesh, const std::string& csv);

private:
    Mesh mesh_;
    std::vector<double> values_;
};

/// Visits every multi-index k with lo[i] <= k[i] <= hi[i] (inclusive) in
/// lexicographic order. fn receives the current multi-index.
template <typename Fn>
void visitBox(std::span<const int> lo, std::span<const int> hi, Fn&& fn) {
    const int n = static_cast<int>(lo.size());
    for (int i = 0; i < n; ++i)
        if (lo[i] > hi[i]) return;
    std::vector<int> k(lo.begin(), lo.end());
    for (;;) {
        fn(std::span<const int>(k));
        int axis = n - 1;
        while (axis >= 0) {
            if (++k[axis] <= hi[axis]) break;
            k[axis] = lo[axis];
            --axis;
        }
        if (axis < 0) return;
    }
}

/// Visits every closed-grid multi-index of the mesh.
template <typename Fn>
void visitAll(const Mesh& mesh, Fn&& fn) {
    std::vector<int> lo(mesh.dim(), 0);
    std::vector<int> hi(mesh.counts());
    visitBox(lo, hi, std::forward<Fn>(fn));
}

/// Visits every interior multi-index of the mesh.
template <typename Fn>
void visitInterior(const Mesh& mesh, Fn&& fn) {
    std::vector<int> lo(mesh.dim(), 1);
    std::vector<int> hi(mesh.counts());
    for (auto& h : hi) --h;
    visitBox(lo, hi, std::forward<Fn>(fn));
}

}  // namespace fdbvp
