#pragma once

#include "biham/common.hpp"

// Batched 1D transforms over an N x M column-major matrix, in place and
// unnormalized. sign = -1 is e^{-2 pi i jk/N}, +1 is e^{+2 pi i jk/N}.
namespace biham::fft {

void columns(ComplexMatrix& m, int sign);
void rows(ComplexMatrix& m, int sign);

}  // namespace biham::fft
