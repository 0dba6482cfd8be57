#include "sarmt/refocus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sarmt/fft.hpp"

namespace sarmt {

std::string RefocusReport::to_text() const {
    std::ostringstream os;
    os.precision(12);
    os << "entropy_before=" << entropy_before << "\n"
       << "entropy_after=" << entropy_after << "\n"
       << "contrast_before=" << contrast_before << "\n"
       << "contrast_after=" << contrast_after << "\n"
       << "azimuth_width_before_px=" << azimuth_width_before << "\n"
       << "azimuth_width_after_px=" << azimuth_width_after << "\n"
       << "rcm_span_before_cells=" << rcm_span_before << "\n"
       << "rcm_span_after_cells=" << rcm_span_after << "\n"
       << "iterations=" << iterations << "\n"
       << "bins_used=" << bins_used << "\n"
       << "estimation_failed=" << (estimation_failed ? 1 : 0) << "\n";
    os << "flags=";
    for (std::size_t i = 0; i < flags.size(); ++i) os << (i ? "," : "") << flags[i];
    os << "\n";
    return os.str();
}

ComplexImage extract_subimage(const ComplexImage& image, const RegionOfInterest& roi) {
    if (roi.azimuth_extent < 32 || roi.range_extent < 32)
        throw std::invalid_argument("extract_subimage: extents must be >= 32 pixels");
    if (roi.azimuth_offset + roi.azimuth_extent > image.data.rows() ||
        roi.range_offset + roi.range_extent > image.data.cols())
        throw std::invalid_argument("extract_subimage: roi out of bounds");

    ComplexImage sub;
    sub.data = ComplexGrid(roi.azimuth_extent, roi.range_extent);
    for (std::size_t r = 0; r < roi.azimuth_extent; ++r)
        for (std::size_t c = 0; c < roi.range_extent; ++c)
            sub.data.at(r, c) = image.data.at(roi.azimuth_offset + r, roi.range_offset + c);
    sub.grid = image.grid.with_image_size(roi.azimuth_extent, roi.range_extent);
    sub.azimuth_pixel_spacing = image.azimuth_pixel_spacing;
    sub.range_pixel_spacing = image.range_pixel_spacing;
    sub.provenance = image.provenance;
    std::ostringstream os;
    os << "extract_subimage(" << roi.azimuth_offset << "," << roi.range_offset << ","
       << roi.azimuth_extent << "," << roi.range_extent << ")";
    sub.provenance.push_back(os.str());
    return sub;
}

void embed_subimage(ComplexImage& image, const ComplexImage& sub, const RegionOfInterest& roi) {
    if (roi.azimuth_offset + roi.azimuth_extent > image.data.rows() ||
        roi.range_offset + roi.range_extent > image.data.cols() ||
        sub.data.rows() != roi.azimuth_extent || sub.data.cols() != roi.range_extent)
        throw std::invalid_argument("embed_subimage: roi/subimage mismatch");
    for (std::size_t r = 0; r < roi.azimuth_extent; ++r)
        for (std::size_t c = 0; c < roi.range_extent; ++c)
            image.data.at(roi.azimuth_offset + r, roi.range_offset + c) = sub.data.at(r, c);
}

ComplexGrid to_data_domain(const ComplexImage& sub) {
    ComplexGrid spectrum = sub.data;
    fft::transform_2d(spectrum, fft::Direction::Inverse);
    return spectrum;
}

ComplexImage image_from_data(ComplexGrid spectrum, const SpatialFrequencyGrid& grid,
                             std::vector<std::string> provenance) {
    if (spectrum.rows() != grid.nx || spectrum.cols() != grid.ny)
        throw std::invalid_argument("image_from_data: grid mismatch");
    ComplexImage img;
    fft::transform_2d(spectrum, fft::Direction::Forward);
    img.data = std::move(spectrum);
    img.grid = grid;
    img.azimuth_pixel_spacing = kTwoPi / (grid.x_step * static_cast<double>(grid.nx));
    img.range_pixel_spacing = kTwoPi / (grid.y_step * static_cast<double>(grid.ny));
    img.provenance = std::move(provenance);
    return img;
}

void apply_correction(ComplexGrid& spectrum, const PhaseErrorSurface& surface) {
    if (spectrum.rows() != surface.grid.nx || spectrum.cols() != surface.grid.ny)
        throw std::invalid_argument("apply_correction: grid mismatch");
    for (std::size_t r = 0; r < spectrum.rows(); ++r)
        for (std::size_t c = 0; c < spectrum.cols(); ++c) {
            const double p = surface.at(r, c);
            spectrum.at(r, c) *= cdouble{std::cos(p), -std::sin(p)};
        }
}

double entropy(const ComplexImage& image) { return image_entropy(image.data); }

RcmTrack residual_rcm(const ComplexImage& sub) {
    // range-compressed view: invert the azimuth axis only
    ComplexGrid view = sub.data;
    fft::transform_cols(view, fft::Direction::Inverse);

    const std::size_t m = view.rows(), n = view.cols();
    std::vector<double> peak_pos(m), peak_mag(m);
    std::vector<double> profile(n);
    double global_peak = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) profile[c] = std::norm(view.at(r, c));
        const double p = subpixel_peak(profile);
        peak_pos[r] = p;
        peak_mag[r] = std::sqrt(*std::max_element(profile.begin(), profile.end()));
        global_peak = std::max(global_peak, peak_mag[r]);
    }

    RcmTrack track;
    if (!(global_peak > 0.0)) {
        track.flagged = true;
        return track;
    }

    // keep azimuth samples where a dominant response is present
    std::vector<double> usable;
    for (std::size_t r = 0; r < m; ++r)
        if (peak_mag[r] >= 0.15 * global_peak) usable.push_back(peak_pos[r]);
    if (usable.size() < 8) {
        track.flagged = true;
        return track;
    }
    track.peak_cell = median5(usable);
    const auto [lo, hi] = std::minmax_element(track.peak_cell.begin(), track.peak_cell.end());
    track.span_cells = *hi - *lo;
    return track;
}

RefocusResult refocus_pipeline(const ComplexImage& image, const RegionOfInterest& roi,
                               const RefocusConfig& config) {
    ComplexImage sub = extract_subimage(image, roi);

    RefocusResult result;
    result.report.entropy_before = entropy(sub);
    result.report.contrast_before = image_contrast(sub.data);
    result.report.azimuth_width_before = azimuth_peak_width(sub.data);
    {
        const RcmTrack t = residual_rcm(sub);
        result.report.rcm_span_before = t.span_cells;
        if (t.flagged) result.report.flags.push_back("rcm_before_untracked");
    }

    // range-resolution reduction factor: smallest power of two confining the
    // a-priori RCM bound to one coarse cell, capped so >= 8 cells remain
    int factor = config.reduce_factor;
    if (factor <= 0) {
        factor = 1;
        while (static_cast<double>(factor) < config.rcm_bound_cells) factor *= 2;
    }
    while (factor > 1 && sub.data.cols() / static_cast<std::size_t>(factor) < 8) factor /= 2;

    ComplexImage current = sub;
    double entropy_current = result.report.entropy_before;
    for (int pass = 1; pass <= config.max_passes; ++pass) {
        const ComplexImage reduced =
            (factor > 1) ? reduce_range_resolution(current, factor) : current;

        ApeEstimate est;
        if (config.estimator == RefocusConfig::Estimator::Pga)
            est = pga_estimate(reduced, config.pga);
        else
            est = minentropy_estimate(reduced, config.minentropy.basis_order, config.minentropy);

        if (est.failed) {
            if (pass == 1) {
                result.report.estimation_failed = true;
                result.report.flags.push_back("estimation_failed:" + est.diagnostics);
                result.corrected = sub;
                result.report.entropy_after = result.report.entropy_before;
                result.report.contrast_after = result.report.contrast_before;
                result.report.azimuth_width_after = result.report.azimuth_width_before;
                result.report.rcm_span_after = result.report.rcm_span_before;
                return result;
            }
            break;
        }
        est = detrend(est);
        result.report.bins_used = est.bins_used;

        ApeProfile profile =
            ape_profile_from_samples(est.x_axis, est.phi0_hat, config.fit_order);
        // pipeline detrend also applies to the fitted representation
        for (std::size_t i = 0; i < profile.phi0.size(); ++i)
            profile.phi0[i] -= profile.fit.coeff(0) +
                               profile.fit.coeff(1) * (profile.x_axis[i] / profile.fit.scale);
        if (profile.fit.coeffs.size() > 0) profile.fit.coeffs[0] = 0.0;
        if (profile.fit.coeffs.size() > 1) profile.fit.coeffs[1] = 0.0;

        PhaseErrorSurface surface = surface_from_ape(profile, current.grid);
        if (surface.extrapolated) result.report.flags.push_back("surface_extrapolated");

        ComplexGrid spectrum = to_data_domain(current);
        apply_correction(spectrum, surface);
        auto provenance = current.provenance;
        provenance.push_back("refocus_pass" + std::to_string(pass));
        current = image_from_data(std::move(spectrum), current.grid, std::move(provenance));
        ++result.report.iterations;

        const double e = entropy(current);
        const double improvement = (entropy_current - e) / std::abs(entropy_current);
        entropy_current = e;
        if (improvement <= config.refine_threshold) break;
    }

    result.report.entropy_after = entropy_current;
    result.report.contrast_after = image_contrast(current.data);
    result.report.azimuth_width_after = azimuth_peak_width(current.data);
    {
        const RcmTrack t = residual_rcm(current);
        result.report.rcm_span_after = t.span_cells;
        if (t.flagged) result.report.flags.push_back("rcm_after_untracked");
    }
    result.corrected = std::move(current);
    return result;
}

}  // namespace sarmt
