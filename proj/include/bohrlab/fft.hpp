#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bohrlab::fft {

std::size_t next_pow2(std::size_t n);

/// In-place radix-2 transform; size must be a power of two. The inverse is
/// normalized by 1/size. Twiddle tables are cached per size and shared
/// across threads.
void transform(std::vector<std::complex<double>>& a, bool inverse);

/// Linear (acyclic) convolution of two real sequences.
std::vector<double> linear_convolve(std::span<const double> a, std::span<const double> b);

/// Linear convolution a*a*a, computed with one forward and one inverse
/// transform.
std::vector<double> linear_cube(std::span<const double> a);

/// Cyclic convolution of length n = a.size() = b.size(), via zero padding
/// and folding.
std::vector<double> cyclic_convolve(std::span<const double> a, std::span<const double> b);

std::vector<double> cyclic_cube(std::span<const double> a);

}  // namespace bohrlab::fft
