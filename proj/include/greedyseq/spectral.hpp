#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "greedyseq/pointset.hpp"

namespace greedyseq {

// Running exponential sums S_n(k) = sum_{m<=n} e^{-2 pi i k.x_m} over a
// frequency window. In 1D the window is k = 1..K; on T^d it is the half
// lattice of 0 < |k|_inf <= K with positive leading nonzero component. The
// other half is implicit: S_n(-k) = conj(S_n(k)). Updates are O(window) per
// point; single writer, any number of concurrent readers after that.
class SpectralState {
public:
    // 1D window k = 1..k_max.
    static SpectralState line(int k_max);
    // T^d half-lattice window |k|_inf <= k_max, d >= 2.
    static SpectralState cube(int dim, int k_max);

    int dim() const { return dim_; }
    int k_max() const { return k_max_; }
    std::size_t n() const { return n_; }
    std::size_t window_size() const { return sums_.size(); }

    void add_point(std::span<const double> x);
    void add_point1(double x) { add_point(std::span<const double>(&x, 1)); }
    void absorb(const PointSet& ps);

    // 1D access: S_n(k), 1 <= k <= k_max.
    std::complex<double> sum1d(int k) const {
        if (dim_ != 1 || k < 1 || k > k_max_) throw std::out_of_range("SpectralState::sum1d");
        return sums_[std::size_t(k - 1)];
    }

    // Window iteration: frequency vector (half lattice representative) and sum.
    const std::vector<std::vector<int>>& freqs() const { return freqs_; }
    const std::vector<std::complex<double>>& sums() const { return sums_; }
    // |k|^2 per stored frequency.
    const std::vector<double>& freq_norm_sq() const { return norm_sq_; }

private:
    SpectralState() = default;

    int dim_ = 1;
    int k_max_ = 0;
    std::size_t n_ = 0;
    std::vector<std::vector<int>> freqs_;    // empty in 1D (freqs implicit: 1..K)
    std::vector<double> norm_sq_;
    std::vector<std::complex<double>> sums_;
};

} // namespace greedyseq
