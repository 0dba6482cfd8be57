#ifndef SARMT_REFOCUS_HPP
#define SARMT_REFOCUS_HPP

#include <string>
#include <vector>

#include "sarmt/autofocus.hpp"
#include "sarmt/error_model.hpp"
#include "sarmt/metrics.hpp"
#include "sarmt/pfa.hpp"
#include "sarmt/types.hpp"

namespace sarmt {

struct RegionOfInterest {
    std::size_t azimuth_offset = 0;
    std::size_t range_offset = 0;
    std::size_t azimuth_extent = 0;
    std::size_t range_extent = 0;
};

struct RefocusReport {
    double entropy_before = 0.0, entropy_after = 0.0;
    double contrast_before = 0.0, contrast_after = 0.0;
    double azimuth_width_before = 0.0, azimuth_width_after = 0.0;  // pixels
    double rcm_span_before = 0.0, rcm_span_after = 0.0;            // range cells
    int iterations = 0;
    std::size_t bins_used = 0;
    bool estimation_failed = false;
    std::vector<std::string> flags;

    std::string to_text() const;  // key=value lines
};

struct RefocusConfig {
    enum class Estimator { Pga, MinEntropy };
    Estimator estimator = Estimator::Pga;
    PgaConfig pga{};
    MinEntropyConfig minentropy{};
    double rcm_bound_cells = 3.0;  // a-priori residual RCM bound
    int reduce_factor = 0;         // 0 = auto from rcm_bound_cells
    int fit_order = 8;
    int max_passes = 2;
    double refine_threshold = 0.01;  // fractional entropy improvement
};

ComplexImage extract_subimage(const ComplexImage& image, const RegionOfInterest& roi);
void embed_subimage(ComplexImage& image, const ComplexImage& sub, const RegionOfInterest& roi);

// Exact inverse of the form_image transform.
ComplexGrid to_data_domain(const ComplexImage& sub);
ComplexImage image_from_data(ComplexGrid spectrum, const SpatialFrequencyGrid& grid,
                             std::vector<std::string> provenance);

// Sample-wise multiply by exp(-j Phi_e(X, Y)); phase-only, energy preserving.
void apply_correction(ComplexGrid& spectrum, const PhaseErrorSurface& surface);

double entropy(const ComplexImage& image);

struct RcmTrack {
    std::vector<double> peak_cell;  // per azimuth-time sample, median filtered
    double span_cells = 0.0;
    bool flagged = false;
};
RcmTrack residual_rcm(const ComplexImage& sub);

struct RefocusResult {
    ComplexImage corrected;
    RefocusReport report;
};

// Extract -> reduce range resolution -> estimate APE -> detrend + fit ->
// surface via the APE-to-2-D map -> correct at full resolution -> image.
// Runs a second pass when the first improves entropy by more than the
// refine threshold.
RefocusResult refocus_pipeline(const ComplexImage& image, const RegionOfInterest& roi,
                               const RefocusConfig& config = {});

}  // namespace sarmt

#endif
