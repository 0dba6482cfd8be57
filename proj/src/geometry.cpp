#include "sarmt/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace sarmt {

void RadarParams::validate() const {
    if (!(carrier_frequency > 0.0)) throw std::invalid_argument("carrier frequency must be > 0");
    if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be > 0");
    if (!(bandwidth < 2.0 * carrier_frequency))
        throw std::invalid_argument("bandwidth must be < 2 * carrier frequency");
    if (num_range_freq_samples < 2 || num_pulses < 2)
        throw std::invalid_argument("sample counts must be >= 2");
    if (!(pulse_interval > 0.0)) throw std::invalid_argument("pulse interval must be > 0");
    if (!(propagation_speed > 0.0)) throw std::invalid_argument("propagation speed must be > 0");
}

void Trajectory::validate() const {
    if (t.size() != pos.size()) throw std::invalid_argument("trajectory: axis/sample mismatch");
    if (t.size() < 2) throw std::invalid_argument("trajectory: need at least 2 samples");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (!(t[i + 1] > t[i])) throw std::invalid_argument("trajectory: time must increase");
    for (const auto& p : pos)
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
            throw std::invalid_argument("trajectory: non-finite sample");
}

bool Trajectory::same_grid(const Trajectory& o, double tol) const {
    if (t.size() != o.t.size()) return false;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (std::abs(t[i] - o.t[i]) > tol) return false;
    return true;
}

std::vector<double> slow_time_axis(std::size_t num_pulses, double pulse_interval) {
    std::vector<double> t(num_pulses);
    const auto c = static_cast<long long>(center_index(num_pulses));
    for (std::size_t i = 0; i < num_pulses; ++i)
        t[i] = (static_cast<long long>(i) - c) * pulse_interval;
    return t;
}

CollectionGeometry derive_geometry(const Trajectory& platform, const Vec3& scene_center) {
    platform.validate();
    const std::size_t n = platform.size();

    CollectionGeometry g;
    g.platform = platform;
    g.scene_center = scene_center;
    g.center = center_index(n);
    g.r_c.resize(n);
    g.phi.resize(n);
    g.theta.resize(n);

    // broadside axis: horizontal projection of the center-pulse line of sight
    const Vec3 los0 = platform.pos[g.center] - scene_center;
    const double h0 = std::hypot(los0.x, los0.y);
    if (h0 <= 0.0)
        throw std::invalid_argument("degenerate geometry: center pulse directly overhead");
    const double bx = los0.x / h0, by = los0.y / h0;

    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 los = platform.pos[i] - scene_center;
        const double r = los.norm();
        if (!(r > 0.0))
            throw std::invalid_argument("degenerate geometry: zero range to scene center");
        g.r_c[i] = r;
        const double horiz = std::hypot(los.x, los.y);
        g.phi[i] = std::atan2(horiz, los.z);
        // signed ground-plane angle from the broadside axis
        const double cross = bx * los.y - by * los.x;
        const double dot = bx * los.x + by * los.y;
        g.theta[i] = std::atan2(cross, dot);
    }
    g.phi_ref = g.phi[g.center];
    return g;
}

std::vector<double> target_range(const Trajectory& target, const Trajectory& platform) {
    target.validate();
    platform.validate();
    if (!target.same_grid(platform))
        throw std::invalid_argument("target_range: trajectories on different slow-time grids");

    std::vector<double> r(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
        r[i] = (platform.pos[i] - target.pos[i]).norm();
        if (!(r[i] > 0.0)) throw std::invalid_argument("target_range: zero range sample");
    }
    return r;
}

}  // namespace sarmt
