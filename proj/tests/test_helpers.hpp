// Shared scenario builders and independent oracles for the test suites.
#ifndef SARMT_TEST_HELPERS_HPP
#define SARMT_TEST_HELPERS_HPP

#include <cmath>
#include <random>
#include <vector>

#include "sarmt/echo_sim.hpp"
#include "sarmt/geometry.hpp"
#include "sarmt/pfa.hpp"
#include "sarmt/types.hpp"

namespace sarmt_test {

using namespace sarmt;

// Straight-and-level broadside collection: platform at (v t, -Rg, H), scene
// center at the origin. tan(theta) = v t / Rg exactly, so the azimuth warp is
// the identity and far-field stationary scatterers stay linear.
struct LineScenario {
    RadarParams params;
    double speed = 100.0;         // m/s
    double ground_range = 5000.0; // m
    double altitude = 5000.0;     // m

    Trajectory platform() const {
        Trajectory tr;
        tr.t = slow_time_axis(params.num_pulses, params.pulse_interval);
        tr.pos.resize(tr.t.size());
        for (std::size_t i = 0; i < tr.t.size(); ++i)
            tr.pos[i] = Vec3{speed * tr.t[i], -ground_range, altitude};
        return tr;
    }

    CollectionGeometry geometry() const { return derive_geometry(platform(), {0, 0, 0}); }

    // constant-acceleration ground target
    Trajectory target(Vec3 p0, Vec3 vel = {}, Vec3 acc = {}) const {
        Trajectory tr;
        tr.t = slow_time_axis(params.num_pulses, params.pulse_interval);
        tr.pos.resize(tr.t.size());
        for (std::size_t i = 0; i < tr.t.size(); ++i) {
            const double t = tr.t[i];
            tr.pos[i] = p0 + vel * t + acc * (0.5 * t * t);
        }
        return tr;
    }

    double aperture() const {
        return params.pulse_interval * static_cast<double>(params.num_pulses - 1);
    }
    // d tan(theta) / dt at aperture center
    double warp_slope() const { return speed / std::hypot(ground_range, 0.0); }
};

// Desk-scale X-band collection for fast unit tests.
inline LineScenario small_scenario(std::size_t pulses = 129, std::size_t freqs = 128) {
    LineScenario sc;
    sc.params.carrier_frequency = 1.0e10;
    sc.params.bandwidth = 1.5e8;
    sc.params.num_range_freq_samples = freqs;
    sc.params.num_pulses = pulses;
    sc.params.pulse_interval = 1.0 / 128.0;
    return sc;
}

// Wide fractional bandwidth (L-band-like) collection: moving-target range
// curvature spans multiple range cells, which the refocus tests need.
inline LineScenario wideband_scenario(std::size_t pulses = 257, std::size_t freqs = 256) {
    LineScenario sc;
    sc.params.carrier_frequency = 1.5e9;
    sc.params.bandwidth = 1.875e8;
    sc.params.num_range_freq_samples = freqs;
    sc.params.num_pulses = pulses;
    sc.params.pulse_interval = 4.0 / 256.0;
    return sc;
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double rms(const std::vector<double>& v) {
    double acc = 0.0;
    for (const double x : v) acc += x * x;
    return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace sarmt_test

#endif
