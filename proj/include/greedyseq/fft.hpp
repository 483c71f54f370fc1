#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace greedyseq {

// In-place iterative radix-2 FFT, sign = -1 forward / +1 inverse (no 1/N scaling).
// n must be a power of two.
void fft_radix2(std::complex<double>* data, std::size_t n, int sign);

// Multi-dimensional unscaled inverse DFT on an m^d cube stored in row-major
// order (last axis fastest):  out[j] = sum_k in[k] e^{+2 pi i k.j / m}.
void idft_cube(std::vector<std::complex<double>>& data, int dim, std::size_t m);

} // namespace greedyseq
