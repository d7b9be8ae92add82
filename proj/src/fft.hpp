#pragma once

// Thin FFTW wrapper: unnormalized in-place complex transforms over a
// row-major array of the given dimensions.

#include <complex>
#include <span>
#include <vector>

namespace fracheat::detail {

enum class FftDirection { forward, backward };

/// In-place unnormalized DFT; forward uses exp(-2 pi i jk/N).
void fft_inplace(std::span<std::complex<double>> data, const std::vector<int>& dims,
                 FftDirection direction);

}  // namespace fracheat::detail
