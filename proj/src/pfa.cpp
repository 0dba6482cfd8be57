#include "sarmt/pfa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sarmt/fft.hpp"

namespace sarmt {

double SpatialFrequencyGrid::x_max_abs() const {
    return std::max(std::abs(x(0)), std::abs(x(nx - 1)));
}

std::vector<double> SpatialFrequencyGrid::x_axis() const {
    std::vector<double> ax(nx);
    for (std::size_t i = 0; i < nx; ++i) ax[i] = x(i);
    return ax;
}

std::vector<double> SpatialFrequencyGrid::y_axis() const {
    std::vector<double> ax(ny);
    for (std::size_t j = 0; j < ny; ++j) ax[j] = y(j);
    return ax;
}

SpatialFrequencyGrid SpatialFrequencyGrid::with_image_size(std::size_t nx2,
                                                           std::size_t ny2) const {
    if (nx2 == 0 || ny2 == 0) throw std::invalid_argument("grid resize: empty");
    SpatialFrequencyGrid g = *this;
    g.nx = nx2;
    g.ny = ny2;
    g.x_step = x_step * static_cast<double>(nx) / static_cast<double>(nx2);
    g.y_step = y_step * static_cast<double>(ny) / static_cast<double>(ny2);
    g.x_start = -g.x_step * static_cast<double>(center_index(nx2));
    g.y_start = y0 - g.y_step * static_cast<double>(center_index(ny2));
    return g;
}

SpatialFrequencyGrid make_spatial_frequency_grid(const RadarParams& params,
                                                 const CollectionGeometry& geometry) {
    params.validate();
    const double sin_phi = std::sin(geometry.phi_ref);
    if (!(sin_phi > 0.0)) throw std::invalid_argument("grid: sin(phi_ref) must be positive");
    const double kappa = 2.0 * kTwoPi * sin_phi / params.propagation_speed;  // 4 pi sin / c

    SpatialFrequencyGrid g;
    g.phi_ref = geometry.phi_ref;
    g.fc = params.carrier_frequency;
    g.y0 = kappa * params.carrier_frequency;
    g.nx = params.num_pulses;
    g.ny = params.num_range_freq_samples;

    const auto t = slow_time_axis(params.num_pulses, params.pulse_interval);
    g.x_step = g.y0 * params.pulse_interval;
    g.x_start = g.y0 * t[0];

    const auto fr = range_freq_axis(params);
    g.y_step = kappa * (fr[1] - fr[0]);
    g.y_start = g.y0 + kappa * fr[0];
    return g;
}

double range_scale_factor(double theta, double phi, double phi_ref) {
    if (!(phi > 0.0 && phi < kPi) || !(std::abs(theta) < kPi / 2.0))
        throw std::invalid_argument("range_scale_factor: angles outside model");
    const double denom = std::sin(phi) * std::cos(theta);
    if (!(denom > 0.0))
        throw std::invalid_argument("range_scale_factor: sin(phi) cos(theta) must be positive");
    return std::sin(phi_ref) / denom;
}

AzimuthWarp build_azimuth_warp(const CollectionGeometry& geometry) {
    const std::size_t n = geometry.num_pulses();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::tan(geometry.theta[i]);

    const bool increasing = g[n - 1] > g[0];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool step_up = g[i + 1] > g[i];
        if (step_up != increasing || g[i + 1] == g[i])
            throw std::invalid_argument("azimuth warp: tan(theta) not strictly monotone");
    }

    AzimuthWarp warp;
    warp.t = geometry.platform.t;
    const double dt = warp.t[1] - warp.t[0];
    const std::size_t c = geometry.center;

    // slope of tan(theta) at aperture center
    if (c >= 2 && c + 2 < n) {
        warp.slope = (-g[c + 2] + 8.0 * g[c + 1] - 8.0 * g[c - 1] + g[c - 2]) / (12.0 * dt);
    } else if (c >= 1 && c + 1 < n) {
        warp.slope = (g[c + 1] - g[c - 1]) / (2.0 * dt);
    } else {
        throw std::invalid_argument("azimuth warp: aperture too short");
    }
    if (warp.slope == 0.0) throw std::invalid_argument("azimuth warp: zero center slope");

    warp.vartheta.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        warp.vartheta[i] = invert_monotone(warp.t, g, warp.slope * warp.t[i]);
    return warp;
}

ResampleMap build_resample_map(const RadarParams& params, const CollectionGeometry& geometry) {
    ResampleMap map;
    const std::size_t n = geometry.num_pulses();
    map.delta_r.resize(n);
    map.freq_offset.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        map.delta_r[i] = range_scale_factor(geometry.theta[i], geometry.phi[i], geometry.phi_ref);
        map.freq_offset[i] = params.carrier_frequency * (map.delta_r[i] - 1.0);
    }
    map.warp = build_azimuth_warp(geometry);
    return map;
}

PhaseHistory range_resample(const PhaseHistory& ph, const RadarParams& params,
                            const ResampleMap& map, ResampleStats* stats) {
    ph.require_stage(Stage::MotionCompensated);
    if (map.delta_r.size() != ph.num_pulses())
        throw std::invalid_argument("range_resample: map pulse count mismatch");
    (void)params;

    PhaseHistory out = ph;
    const double fr0 = ph.fr_axis.front();
    const double dfr = ph.fr_axis[1] - ph.fr_axis[0];
    SincInterpolator interp;
    ResampleStats local;
    std::vector<double> pos(ph.num_freqs());
    std::vector<cdouble> row(ph.num_freqs());

    for (std::size_t p = 0; p < ph.num_pulses(); ++p) {
        for (std::size_t f = 0; f < ph.num_freqs(); ++f) {
            const double f_src = map.delta_r[p] * ph.fr_axis[f] + map.freq_offset[p];
            pos[f] = (f_src - fr0) / dfr;
        }
        const cdouble* src = ph.data.data() + p * ph.num_freqs();
        interp.resample({src, ph.num_freqs()}, pos, row, local);
        std::copy(row.begin(), row.end(), out.data.data() + p * ph.num_freqs());
    }
    out.stage = Stage::RangeResampled;
    if (stats) stats->merge(local);
    return out;
}

namespace {

// Resamples every column of the grid at per-row source positions given in
// fractional sample units.
void resample_columns(const ComplexGrid& in, ComplexGrid& out, std::span<const double> pos,
                      ResampleStats& stats) {
    SincInterpolator interp;
    std::vector<cdouble> col(in.rows()), res(in.rows());
    for (std::size_t c = 0; c < in.cols(); ++c) {
        for (std::size_t r = 0; r < in.rows(); ++r) col[r] = in.at(r, c);
        interp.resample(col, pos, res, stats);
        for (std::size_t r = 0; r < in.rows(); ++r) out.at(r, c) = res[r];
    }
}

}  // namespace

PhaseHistory rcm_linearize(const PhaseHistory& ph, const AzimuthWarp& warp,
                           ResampleStats* stats) {
    ph.require_stage(Stage::RangeResampled);
    if (warp.vartheta.size() != ph.num_pulses())
        throw std::invalid_argument("rcm_linearize: warp pulse count mismatch");

    const double t0 = ph.t_axis.front();
    const double dt = ph.t_axis[1] - ph.t_axis[0];
    std::vector<double> pos(ph.num_pulses());
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = (warp.vartheta[i] - t0) / dt;

    PhaseHistory out = ph;
    ResampleStats local;
    resample_columns(ph.data, out.data, pos, local);
    out.stage = Stage::RcmLinearized;
    if (stats) stats->merge(local);
    return out;
}

PhaseHistory keystone_transform(const PhaseHistory& ph, const RadarParams& params,
                                ResampleStats* stats) {
    ph.require_stage(Stage::RcmLinearized);

    const double t0 = ph.t_axis.front();
    const double dt = ph.t_axis[1] - ph.t_axis[0];
    PhaseHistory out = ph;
    ResampleStats local;
    SincInterpolator interp;
    std::vector<cdouble> col(ph.num_pulses()), res(ph.num_pulses());
    std::vector<double> pos(ph.num_pulses());

    for (std::size_t f = 0; f < ph.num_freqs(); ++f) {
        const double scale =
            params.carrier_frequency / (params.carrier_frequency + ph.fr_axis[f]);
        for (std::size_t i = 0; i < ph.num_pulses(); ++i)
            pos[i] = (scale * ph.t_axis[i] - t0) / dt;
        for (std::size_t r = 0; r < ph.num_pulses(); ++r) col[r] = ph.data.at(r, f);
        interp.resample(col, pos, res, local);
        for (std::size_t r = 0; r < ph.num_pulses(); ++r) out.data.at(r, f) = res[r];
    }
    out.stage = Stage::Keystoned;
    if (stats) stats->merge(local);
    return out;
}

ComplexImage form_image(const PhaseHistory& ph, const SpatialFrequencyGrid& grid) {
    ph.require_stage(Stage::Keystoned);
    if (ph.num_pulses() != grid.nx || ph.num_freqs() != grid.ny)
        throw std::invalid_argument("form_image: data does not match grid");

    ComplexImage img;
    img.data = ph.data;
    fft::transform_2d(img.data, fft::Direction::Forward);
    img.grid = grid;
    img.azimuth_pixel_spacing = kTwoPi / (grid.x_step * static_cast<double>(grid.nx));
    img.range_pixel_spacing = kTwoPi / (grid.y_step * static_cast<double>(grid.ny));
    img.provenance = {"form_image"};
    return img;
}

PfaResult run_pfa(const PhaseHistory& ph, const RadarParams& params,
                  const CollectionGeometry& geometry, bool keep_stages) {
    PfaResult result;
    const ResampleMap map = build_resample_map(params, geometry);
    const SpatialFrequencyGrid grid = make_spatial_frequency_grid(params, geometry);

    PhaseHistory work = (ph.stage == Stage::Raw) ? motion_compensate(ph, params, geometry) : ph;
    if (keep_stages) result.stages.push_back(work);

    work = range_resample(work, params, map, &result.stats);
    if (keep_stages) result.stages.push_back(work);
    work = rcm_linearize(work, map.warp, &result.stats);
    if (keep_stages) result.stages.push_back(work);
    work = keystone_transform(work, params, &result.stats);
    if (keep_stages) result.stages.push_back(work);

    result.image = form_image(work, grid);
    result.image.provenance = {"motion_compensate", "range_resample", "rcm_linearize",
                               "keystone_transform", "form_image"};
    return result;
}

}  // namespace sarmt
