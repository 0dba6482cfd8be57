#ifndef SARMT_GEOMETRY_HPP
#define SARMT_GEOMETRY_HPP

#include <vector>

#include "sarmt/types.hpp"

namespace sarmt {

struct RadarParams {
    double carrier_frequency = 0.0;       // Hz
    double bandwidth = 0.0;               // Hz
    std::size_t num_range_freq_samples = 0;
    std::size_t num_pulses = 0;
    double pulse_interval = 0.0;          // s
    double propagation_speed = kSpeedOfLight;

    void validate() const;
    double wavelength() const { return propagation_speed / carrier_frequency; }
};

// Sampled path on the uniform slow-time grid, t = 0 at the center pulse.
struct Trajectory {
    std::vector<double> t;   // s, strictly increasing, uniform
    std::vector<Vec3> pos;   // m

    std::size_t size() const { return t.size(); }
    void validate() const;
    bool same_grid(const Trajectory& o, double tol = 1e-9) const;
};

// Builds the uniform slow-time axis with t = 0 at index floor(n/2).
std::vector<double> slow_time_axis(std::size_t num_pulses, double pulse_interval);

struct CollectionGeometry {
    Trajectory platform;
    Vec3 scene_center;
    std::vector<double> r_c;    // m, radar to scene center
    std::vector<double> theta;  // rad, ground-plane azimuth from broadside at center
    std::vector<double> phi;    // rad, incidence angle from vertical
    double phi_ref = 0.0;       // phi at the center pulse
    std::size_t center = 0;     // center pulse index

    std::size_t num_pulses() const { return platform.size(); }
};

// Derives range, azimuth-angle and incidence-angle histories from a platform
// path. The broadside axis is the horizontal projection of the center-pulse
// line of sight; theta is the signed ground-plane angle from it (positive
// toward +z x broadside, i.e. counterclockwise from above).
CollectionGeometry derive_geometry(const Trajectory& platform, const Vec3& scene_center);

// Per-pulse range from platform to (possibly moving) target; both on the same
// slow-time grid.
std::vector<double> target_range(const Trajectory& target, const Trajectory& platform);

}  // namespace sarmt

#endif
