#pragma once

#include <span>
#include <vector>

#include "kac/util.hpp"

namespace kac {

/// Thin FFTW wrapper for 1-D complex transforms (plan cache per size,
/// guarded by a mutex; execution is thread safe).
/// Conventions: forward is sum_j x_j e^{-2 pi i jk/N} (unnormalized),
/// inverse divides by N, so inverse(forward(x)) == x.
std::vector<cplx> fft_forward(std::span<const cplx> x);
std::vector<cplx> fft_inverse(std::span<const cplx> x);

}  // namespace kac
