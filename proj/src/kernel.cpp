#include "greedyseq/kernel.hpp"
#include "greedyseq/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace greedyseq {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPiSq = 2.0 * kPi * kPi;
} // namespace

Kernel1D Kernel1D::bernoulli2() {
    Kernel1D k;
    k.kind_ = Kernel1DKind::Bernoulli2;
    k.cutoff_ = 0;
    k.quant_bound_ = 1.0 / kTwoPiSq; // h(k) k^2 is constant
    return k;
}

Kernel1D Kernel1D::log_sin() {
    Kernel1D k;
    k.kind_ = Kernel1DKind::LogSin;
    k.cutoff_ = 0;
    k.quant_bound_ = 0.5; // h(k) k^2 = k/2 >= 1/2
    return k;
}

Kernel1D Kernel1D::explicit_fourier(std::map<int, double> coeffs, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("explicit_fourier: cutoff must be >= 1");
    Kernel1D k;
    k.kind_ = Kernel1DKind::ExplicitFourier;
    for (auto& [freq, val] : coeffs) {
        if (freq == 0) throw std::invalid_argument("explicit_fourier: no coefficient at k = 0 (mean zero)");
        if (val <= 0.0) throw std::invalid_argument("explicit_fourier: coefficients must be positive");
        // store positive frequencies only; a negative key must agree with its mirror
        int kk = std::abs(freq);
        auto it = k.coeffs_.find(kk);
        if (it != k.coeffs_.end() && it->second != val)
            throw std::invalid_argument("explicit_fourier: evenness violated at |k| = " + std::to_string(kk));
        k.coeffs_[kk] = val;
    }
    if (k.coeffs_.empty()) throw std::invalid_argument("explicit_fourier: empty coefficient set");
    k.cutoff_ = cutoff;
    return k;
}

std::string Kernel1D::name() const {
    switch (kind_) {
        case Kernel1DKind::Bernoulli2: return "bernoulli2";
        case Kernel1DKind::LogSin: return "logsin";
        case Kernel1DKind::ExplicitFourier: return "fourier";
    }
    return "?";
}

double Kernel1D::eval(double x) const {
    double t = wrap01(x);
    switch (kind_) {
        case Kernel1DKind::Bernoulli2:
            return t * t - t + 1.0 / 6.0;
        case Kernel1DKind::LogSin: {
            if (t == 0.0) throw SingularEvalError("logsin kernel evaluated at its singularity x = 0");
            return -std::log(2.0 * std::sin(kPi * t));
        }
        case Kernel1DKind::ExplicitFourier: {
            double s = 0.0;
            for (const auto& [k, h] : coeffs_) {
                if (k > cutoff_) break;
                s += 2.0 * h * std::cos(2.0 * kPi * k * t);
            }
            return s;
        }
    }
    return 0.0;
}

double Kernel1D::fourier_coefficient(int k) const {
    if (k == 0) throw std::invalid_argument("fourier_coefficient: k = 0 is the mean-value frequency (0 by convention)");
    int a = std::abs(k);
    switch (kind_) {
        case Kernel1DKind::Bernoulli2:
            return 1.0 / (kTwoPiSq * double(a) * double(a));
        case Kernel1DKind::LogSin:
            return 0.5 / double(a);
        case Kernel1DKind::ExplicitFourier: {
            auto it = coeffs_.find(a);
            return it == coeffs_.end() ? 0.0 : it->second;
        }
    }
    return 0.0;
}

double Kernel1D::value_at_zero() const {
    switch (kind_) {
        case Kernel1DKind::Bernoulli2:
            return 1.0 / 6.0;
        case Kernel1DKind::LogSin:
            return std::numeric_limits<double>::infinity();
        case Kernel1DKind::ExplicitFourier: {
            double s = 0.0;
            for (const auto& [k, h] : coeffs_)
                if (k <= cutoff_) s += 2.0 * h;
            return s;
        }
    }
    return 0.0;
}

double Kernel1D::truncation_tail(int K) const {
    if (K < 0) K = 0;
    switch (kind_) {
        case Kernel1DKind::Bernoulli2:
            // 2 sum_{k>K} 1/(2 pi^2 k^2) <= 1/(pi^2 K); at K=0 the full sum is 1/6
            return K == 0 ? 1.0 / 6.0 : 1.0 / (kPi * kPi * double(K));
        case Kernel1DKind::LogSin:
            return std::numeric_limits<double>::infinity(); // sum 1/k diverges
        case Kernel1DKind::ExplicitFourier: {
            // everything stored past K, including coefficients the eval cutoff
            // already drops
            double s = 0.0;
            for (const auto& [k, h] : coeffs_)
                if (k > K) s += 2.0 * h;
            return s;
        }
    }
    return 0.0;
}

AdmissibilityReport Kernel1D::verify_admissibility(double c, int k_max) const {
    if (c <= 0.0) throw std::invalid_argument("verify_admissibility: c must be positive");
    if (k_max < 1) throw std::invalid_argument("verify_admissibility: k_max must be >= 1");
    AdmissibilityReport rep;
    rep.k_checked = k_max;
    rep.satisfied = true;
    rep.certified_c = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        double hk = fourier_coefficient(k);
        double ratio = hk * double(k) * double(k);
        rep.certified_c = std::min(rep.certified_c, ratio);
        // relative slack so h(k) k^2 == c passes despite rounding
        if (ratio < c * (1.0 - 1e-12) && rep.first_violation == 0) {
            rep.satisfied = false;
            rep.first_violation = k;
        }
    }
    if (rep.certified_c <= 0.0) rep.satisfied = false;
    if (rep.satisfied) quant_bound_ = std::max(quant_bound_.value_or(0.0), rep.certified_c);
    return rep;
}

bool Kernel1D::two_sided_k2() const {
    switch (kind_) {
        case Kernel1DKind::Bernoulli2:
            return true;
        case Kernel1DKind::LogSin:
            return false; // h(k) k^2 = k/2 is unbounded above
        case Kernel1DKind::ExplicitFourier: {
            // every frequency up to the cutoff must carry a positive coefficient
            for (int k = 1; k <= cutoff_; ++k)
                if (coeffs_.find(k) == coeffs_.end()) return false;
            return true;
        }
    }
    return false;
}

// --- KernelTd ---------------------------------------------------------------

KernelTd KernelTd::green(int dim, int cutoff) {
    if (dim < 2) throw std::invalid_argument("KernelTd: dimension must be >= 2");
    if (cutoff < 1) throw std::invalid_argument("KernelTd: cutoff must be >= 1");
    KernelTd k;
    k.dim_ = dim;
    k.cutoff_ = cutoff;
    k.c1_ = 0.5;
    k.c2_ = 2.0;
    return k;
}

double KernelTd::coefficient(const std::vector<int>& k) const {
    bool zero = true;
    for (int c : k)
        if (c != 0) zero = false;
    if (zero) throw std::invalid_argument("KernelTd::coefficient: zero frequency excluded");
    return 1.0;
}

double KernelTd::eval(const std::vector<double>& x) const {
    if (int(x.size()) != dim_) throw std::invalid_argument("KernelTd::eval: dimension mismatch");
    // sum over the half lattice (first nonzero component positive), doubling
    // the cosine; exact by conjugate symmetry since a_k = a_{-k}.
    std::vector<int> k(dim_, 0);
    double total = 0.0;
    const double two_pi = 2.0 * kPi;
    // odometer over the full window, skipping k = 0 and taking each +/- pair once
    std::vector<int> idx(dim_, -cutoff_);
    while (true) {
        // canonical representative: first nonzero component positive
        int lead = 0;
        for (int i = 0; i < dim_; ++i) {
            if (idx[i] != 0) { lead = idx[i]; break; }
        }
        if (lead > 0) {
            double k2 = 0.0, phase = 0.0;
            for (int i = 0; i < dim_; ++i) {
                k2 += double(idx[i]) * double(idx[i]);
                phase += double(idx[i]) * x[i];
            }
            std::vector<int> kv(idx.begin(), idx.end());
            total += coefficient(kv) * 2.0 * std::cos(two_pi * phase) / (4.0 * kPi * kPi * k2);
        }
        int a = 0;
        while (a < dim_ && idx[a] == cutoff_) { idx[a] = -cutoff_; ++a; }
        if (a == dim_) break;
        ++idx[a];
    }
    return total;
}

double KernelTd::value_at_zero() const {
    return eval(std::vector<double>(dim_, 0.0));
}

} // namespace greedyseq
