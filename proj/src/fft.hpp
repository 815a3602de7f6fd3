#pragma once

#include "homog/grid.hpp"

namespace homog::detail {

enum class Direction { Forward = -1, Backward = +1 };

/// In-place unnormalized DFT of `count` interleaved lines of length `n`.
/// Element j of line l lives at data[l * dist + j * stride]. Forward uses
/// exp(-2 pi i k j / n), Backward exp(+2 pi i k j / n).
void dft_lines(Complex* data, int n, int count, int stride, int dist,
               Direction direction);

/// In-place unnormalized DFT along x (contiguous) of a rows x cols array.
inline void dft_along_x(Complex* data, int cols, int rows, Direction d) {
  dft_lines(data, cols, rows, 1, cols, d);
}

/// In-place unnormalized DFT along y (strided) of a rows x cols array.
inline void dft_along_y(Complex* data, int cols, int rows, Direction d) {
  dft_lines(data, rows, cols, cols, 1, d);
}

/// Maps a signed wavenumber to its FFT storage slot in [0, n).
inline int fft_slot(int k, int n) noexcept { return ((k % n) + n) % n; }

}  // namespace homog::detail
