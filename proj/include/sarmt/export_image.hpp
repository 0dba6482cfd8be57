#ifndef SARMT_EXPORT_IMAGE_HPP
#define SARMT_EXPORT_IMAGE_HPP

#include <filesystem>

#include "sarmt/pfa.hpp"

namespace sarmt {

// Writes an 8-bit grayscale PGM (P5) of the dB-scaled magnitude, clipped at
// peak - dynamic_range_db. Deterministic byte-for-byte for identical input.
void export_magnitude(const ComplexImage& image, const std::filesystem::path& path,
                      double dynamic_range_db = 40.0);

}  // namespace sarmt

#endif
