#ifndef EMDEN_FFT_HPP
#define EMDEN_FFT_HPP

#include <complex>
#include <vector>

namespace emden {

// In-place radix-2 FFT, forward convention x_j -> sum_k x_k exp(-2*pi*i*j*k/n).
// n must be a power of two.
void fft(std::vector<std::complex<double>>& data, bool inverse = false);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

}  // namespace emden

#endif
