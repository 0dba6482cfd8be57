#ifndef SARMT_METRICS_HPP
#define SARMT_METRICS_HPP

#include <vector>

#include "sarmt/types.hpp"

namespace sarmt {

// Shannon entropy of the normalized intensity distribution |pixel|^2 / total.
// Zero-energy input is rejected.
double image_entropy(const ComplexGrid& g);

// Intensity contrast: std(|I|^2) / mean(|I|^2).
double image_contrast(const ComplexGrid& g);

// -3 dB width (in pixels) of the azimuth cut through the brightest pixel,
// measured on a 16x band-limited upsampled cut.
double azimuth_peak_width(const ComplexGrid& g);

// Subpixel peak location of |v| by parabolic interpolation on |v|^2.
double subpixel_peak(const std::vector<double>& magnitude2);

// Median filter, window length 5 (ends clamped).
std::vector<double> median5(const std::vector<double>& v);

}  // namespace sarmt

#endif
