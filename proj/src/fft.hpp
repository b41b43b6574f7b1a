#pragma once

#include <complex>
#include <vector>

namespace vbgk::detail {

/// Unnormalized in-place 2D DFT of an n x n row-major array.
/// forward: sum_j f_j exp(-i k.x_j); backward: sum_k F_k exp(+i k.x_j).
/// Plans are created once per n and shared; execution is thread-safe.
void fft2d_forward(int n, std::vector<std::complex<double>>& data);
void fft2d_backward(int n, std::vector<std::complex<double>>& data);

}  // namespace vbgk::detail
