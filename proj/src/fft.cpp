#include "greedyseq/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace greedyseq {

void fft_radix2(std::complex<double>* a, std::size_t n, int sign) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_radix2: length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = double(sign) * 2.0 * std::numbers::pi / double(len);
        std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j];
                std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void idft_cube(std::vector<std::complex<double>>& data, int dim, std::size_t m) {
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= m;
    if (data.size() != total) throw std::invalid_argument("idft_cube: size mismatch");

    std::vector<std::complex<double>> line(m);
    // transform along each axis in turn; axis a has stride m^(dim-1-a)
    std::size_t stride = 1;
    for (int axis = dim - 1; axis >= 0; --axis) {
        std::size_t block = stride * m;
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::size_t t = 0; t < m; ++t) line[t] = data[base + off + t * stride];
                fft_radix2(line.data(), m, +1);
                for (std::size_t t = 0; t < m; ++t) data[base + off + t * stride] = line[t];
            }
        }
        stride *= m;
    }
}

} // namespace greedyseq
