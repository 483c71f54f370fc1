#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace greedyseq {

// How a point set came to be; serialized as a JSON sidecar next to the CSV.
// `detail` holds generator-specific fields (kernel name, seed literals, solver
// config, alpha, base, rng seed) so a run can be reproduced from the sidecar.
struct Provenance {
    std::string kind = "unspecified"; // greedy | kronecker | vdc | random | lattice | file
    nlohmann::json detail = nlohmann::json::object();
};

// Ordered finite sequence of points on [0,1)^d, order = generation order.
class PointSet {
public:
    explicit PointSet(std::size_t dim = 1) : dim_(dim) {
        if (dim == 0) throw std::invalid_argument("PointSet: dimension must be >= 1");
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return coords_.size() / dim_; }
    bool empty() const { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    // 1D convenience accessor.
    double coord(std::size_t i) const { return coords_[i * dim_]; }

    const std::vector<double>& raw() const { return coords_; }

    void append(std::span<const double> p) {
        if (p.size() != dim_) throw std::invalid_argument("PointSet::append: dimension mismatch");
        for (double c : p) {
            if (!(c >= 0.0 && c < 1.0))
                throw std::invalid_argument("PointSet::append: coordinate outside [0,1)");
        }
        coords_.insert(coords_.end(), p.begin(), p.end());
    }
    void append1(double x) { append(std::span<const double>(&x, 1)); }

    // First n points as a shallow prefix copy (provenance carried over).
    PointSet prefix(std::size_t n) const {
        PointSet p(dim_);
        p.coords_.assign(coords_.begin(), coords_.begin() + std::min(n, size()) * dim_);
        p.provenance = provenance;
        return p;
    }

    Provenance provenance;

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

} // namespace greedyseq
