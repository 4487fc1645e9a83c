#include "fdbvp/grid.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fdbvp {

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty() || lower_.size() != upper_.size())
        throw std::invalid_argument("BoxDomain: need matching nonempty corner vectors");
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]))
            throw std::invalid_argument("BoxDomain: corners must be finite");
        if (!(lower_[i] < upper_[i]))
            throw std::invalid_argument("BoxDomain: requires a_i < b_i on every axis");
    }
}

double BoxDomain::volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= edge(i);
    return v;
}

Mesh::Mesh(BoxDomain domain, std::vector<int> counts)
    : domain_(std::move(domain)), counts_(std::move(counts)) {
    if (static_cast<int>(counts_.size()) != domain_.dim())
        throw std::invalid_argument("Mesh: counts dimension mismatch");
    const int n = domain_.dim();
    h_.resize(n);
    for (int i = 0; i < n; ++i) {
        if (counts_[i] < 2)
            throw std::invalid_argument("Mesh: every axis needs at least 2 subintervals");
        h_[i] = domain_.edge(i) / counts_[i];
    }
    strides_.assign(n, 1);
    pointCount_ = 1;
    for (int i = n - 1; i >= 0; --i) {
        strides_[i] = pointCount_;
        pointCount_ *= static_cast<std::size_t>(counts_[i] + 1);
    }
    cellVolume_ = 1.0;
    for (int i = 0; i < n; ++i) cellVolume_ *= h_[i];
}

double Mesh::maxSpacing() const {
    double m = 0.0;
    for (double h : h_) m = std::max(m, h);
    return m;
}

std::size_t Mesh::interiorCount() const {
    std::size_t m = 1;
    for (int c : counts_) m *= static_cast<std::size_t>(c - 1);
    return m;
}

double Mesh::coordinate(int axis, int k) const {
    if (k == counts_[axis]) return domain_.upper(axis);
    return domain_.lower(axis) + k * h_[axis];
}

std::size_t Mesh::flatten(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (int i = 0; i < dim(); ++i) flat += static_cast<std::size_t>(idx[i]) * strides_[i];
    return flat;
}

void Mesh::unflatten(std::size_t flat, std::span<int> idx) const {
    for (int i = 0; i < dim(); ++i) {
        idx[i] = static_cast<int>(flat / strides_[i]);
        flat %= strides_[i];
    }
}

bool Mesh::isInterior(std::span<const int> idx) const {
    for (int i = 0; i < dim(); ++i)
        if (idx[i] <= 0 || idx[i] >= counts_[i]) return false;
    return true;
}

PointClass Mesh::classify(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != dim())
        throw std::invalid_argument("classify: index dimension mismatch");
    PointClass pc;
    for (int i = 0; i < dim(); ++i) {
        if (idx[i] < 0 || idx[i] > counts_[i])
            throw std::out_of_range("classify: index outside closed grid");
        if (idx[i] == 0) pc.backwardAxes.push_back(i);
        if (idx[i] == counts_[i]) pc.forwardAxes.push_back(i);
    }
    pc.interior = pc.forwardAxes.empty() && pc.backwardAxes.empty();
    return pc;
}

double Mesh::distToBoundary(std::span<const int> idx) const {
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < dim(); ++i) {
        const int steps = std::min(idx[i], counts_[i] - idx[i]);
        d = std::min(d, steps * h_[i]);
    }
    return d;
}

GridFunction::GridFunction(Mesh mesh)
    : mesh_(std::move(mesh)), values_(mesh_.pointCount(), 0.0) {}

GridFunction::GridFunction(Mesh mesh, std::vector<double> values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
    if (values_.size() != mesh_.pointCount())
        throw std::invalid_argument("GridFunction: value count does not match the closed grid");
}

void GridFunction::requireFinite() const {
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: non-finite entry");
}

std::string GridFunction::toCsv() const {
    const int n = mesh_.dim();
    std::ostringstream out;
    for (int i = 0; i < n; ++i) out << "i_" << (i + 1) << ",";
    for (int i = 0; i < n; ++i) out << "x_" << (i + 1) << ",";
    out << "value\n";
    char buf[40];
    visitAll(mesh_, [&](std::span<const int> idx) {
        for (int i = 0; i < n; ++i) out << idx[i] << ",";
        for (int i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", mesh_.coordinate(i, idx[i]));
            out << buf << ",";
        }
        std::snprintf(buf, sizeof buf, "%.17g", values_[mesh_.flatten(idx)]);
        out << buf << "\n";
    });
    return out.str();
}

GridFunction GridFunction::fromCsv(const Mesh& mesh, const std::string& csv) {
    GridFunction u(mesh);
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("fromCsv: empty input");
    const int n = mesh.dim();
    std::vector<int> idx(n);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i < n; ++i) {
            if (!std::getline(ls, cell, ',')) throw std::invalid_argument("fromCsv: short row");
            idx[i] = std::stoi(cell);
        }
        for (int i = 0; i < n; ++i)
            if (!std::getline(ls, cell, ',')) throw std::invalid_argument("fromCsv: short row");
        if (!std::getline(ls, cell, ',')) throw std::invalid_argument("fromCsv: missing value");
        u.at(idx) = std::stod(cell);
        ++rows;
    }
    if (rows != mesh.pointCount()) throw std::invalid_argument("fromCsv: row count mismatch");
    return u;
}

}  // namespace fdbvp
