#ifndef PINLAB_SERIES_HPP
#define PINLAB_SERIES_HPP

#include <cstddef>
#include <vector>

namespace pinlab::series {

// c = a * b, truncated to degree N (inclusive).
std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b, std::size_t N);

// b with a * b = 1 mod x^{N+1}; requires a[0] != 0. Newton doubling with
// FFT convolutions, O(N log N).
std::vector<double> inverse(const std::vector<double>& a, std::size_t N);

}  // namespace pinlab::series

#endif
