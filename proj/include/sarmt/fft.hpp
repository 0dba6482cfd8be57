#ifndef SARMT_FFT_HPP
#define SARMT_FFT_HPP

#include <vector>

#include "sarmt/types.hpp"

namespace sarmt::fft {

enum class Direction { Forward, Inverse };

// Centered unitary DFT:
//   out[p] = (1/sqrt(n)) * sum_m in[m] * exp(-+ j 2 pi (p - c)(m - c) / n)
// with c = floor(n/2) for both axes, minus sign for Forward. Forward and
// Inverse are exact adjoints, so energy is preserved and the round trip is
// the identity up to rounding.
void transform_1d(cdouble* data, std::size_t n, Direction dir);

void transform_rows(ComplexGrid& g, Direction dir);  // along the column index, per row
void transform_cols(ComplexGrid& g, Direction dir);  // along the row index, per column
void transform_2d(ComplexGrid& g, Direction dir);

}  // namespace sarmt::fft

#endif
