#ifndef SARMT_PFA_HPP
#define SARMT_PFA_HPP

#include <optional>
#include <string>
#include <vector>

#include "sarmt/echo_sim.hpp"
#include "sarmt/geometry.hpp"
#include "sarmt/interp.hpp"
#include "sarmt/types.hpp"

namespace sarmt {

// Rectangular spatial-frequency grid of the reformatted data:
//   X = (4 pi sin(phi_ref) fc / c) * t          (azimuth, 0 at center pulse)
//   Y = (4 pi sin(phi_ref) / c) * (fc + fr)     (range, Y0 at band center)
// The X <-> slow-time unit constant equals y0, so t = X / y0 and the
// argument of the error polynomial at grid point (X, Y) is X / Y seconds.
struct SpatialFrequencyGrid {
    double x_start = 0.0, x_step = 0.0;
    double y_start = 0.0, y_step = 0.0;
    std::size_t nx = 0, ny = 0;
    double y0 = 0.0;       // rad/m, 4 pi sin(phi_ref) fc / c
    double phi_ref = 0.0;  // rad
    double fc = 0.0;       // Hz

    double x(std::size_t i) const { return x_start + x_step * static_cast<double>(i); }
    double y(std::size_t j) const { return y_start + y_step * static_cast<double>(j); }
    double x_max_abs() const;
    double time_from_x(double x_val) const { return x_val / y0; }

    std::vector<double> x_axis() const;
    std::vector<double> y_axis() const;

    // Same spectral span resampled to a cropped image size (nx2 x ny2).
    SpatialFrequencyGrid with_image_size(std::size_t nx2, std::size_t ny2) const;
};

SpatialFrequencyGrid make_spatial_frequency_grid(const RadarParams& params,
                                                 const CollectionGeometry& geometry);

// Azimuth change-of-variable that linearizes tan(theta):
// tan(theta(vartheta(t))) = slope * t, vartheta(0) = 0.
struct AzimuthWarp {
    std::vector<double> t;         // output slow-time grid
    std::vector<double> vartheta;  // warped source time per output sample
    double slope = 0.0;            // d tan(theta)/dt at t = 0
};

struct ResampleMap {
    std::vector<double> delta_r;      // per-pulse range frequency scale
    std::vector<double> freq_offset;  // per-pulse fc (delta_r - 1)
    AzimuthWarp warp;
};

double range_scale_factor(double theta, double phi, double phi_ref);
AzimuthWarp build_azimuth_warp(const CollectionGeometry& geometry);
ResampleMap build_resample_map(const RadarParams& params, const CollectionGeometry& geometry);

PhaseHistory range_resample(const PhaseHistory& ph, const RadarParams& params,
                            const ResampleMap& map, ResampleStats* stats = nullptr);
PhaseHistory rcm_linearize(const PhaseHistory& ph, const AzimuthWarp& warp,
                           ResampleStats* stats = nullptr);
PhaseHistory keystone_transform(const PhaseHistory& ph, const RadarParams& params,
                                ResampleStats* stats = nullptr);

struct ComplexImage {
    ComplexGrid data;  // rows = azimuth pixels, cols = range pixels
    SpatialFrequencyGrid grid;
    double azimuth_pixel_spacing = 0.0;  // units of the linear-phase coefficient a1
    double range_pixel_spacing = 0.0;    // m
    std::vector<std::string> provenance;
};

// Centered unitary 2-D Fourier transform of the (X, Y) data. The sign is
// fixed so a data-domain phase +j(a0 Y + a1 X) peaks at positive pixel
// offsets from the center pixel.
ComplexImage form_image(const PhaseHistory& ph, const SpatialFrequencyGrid& grid);

// Full chain: motion compensate (if raw), range resample, RCM linearize,
// keystone, image. Optionally records intermediate stages.
struct PfaResult {
    ComplexImage image;
    ResampleStats stats;
    std::vector<PhaseHistory> stages;  // filled when keep_stages
};
PfaResult run_pfa(const PhaseHistory& ph, const RadarParams& params,
                  const CollectionGeometry& geometry, bool keep_stages = false);

}  // namespace sarmt

#endif
