#include "sarmt/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sarmt/error_model.hpp"
#include "sarmt/pfa.hpp"

namespace sarmt {

namespace {

using nlohmann::json;

Vec3 vec3_from(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected [x, y, z]");
    return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

cdouble amplitude_from(const json& j) {
    if (j.is_number()) return cdouble{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2)
        return cdouble{j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("amplitude must be a number or [re, im]");
}

std::vector<std::pair<double, Vec3>> waypoints_from(const json& j) {
    std::vector<std::pair<double, Vec3>> wp;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 4)
            throw std::invalid_argument("waypoint must be [t, x, y, z]");
        wp.emplace_back(p[0].get<double>(),
                        Vec3{p[1].get<double>(), p[2].get<double>(), p[3].get<double>()});
    }
    if (wp.size() < 2) throw std::invalid_argument("need at least 2 waypoints");
    for (std::size_t i = 0; i + 1 < wp.size(); ++i)
        if (!(wp[i + 1].first > wp[i].first))
            throw std::invalid_argument("waypoint times must increase");
    return wp;
}

// Catmull-Rom evaluation through waypoints, clamped at the ends.
Vec3 waypoint_position(const std::vector<std::pair<double, Vec3>>& wp, double t) {
    const std::size_t n = wp.size();
    std::size_t seg = 0;
    while (seg + 2 < n && t > wp[seg + 1].first) ++seg;
    const auto& p1 = wp[seg];
    const auto& p2 = wp[seg + 1];
    const auto& p0 = wp[seg == 0 ? 0 : seg - 1];
    const auto& p3 = wp[std::min(n - 1, seg + 2)];
    const double h = p2.first - p1.first;
    const double u = std::clamp((t - p1.first) / h, -1.0, 2.0);

    // tangents from neighbor differences (finite-difference Catmull-Rom)
    auto tangent = [](const std::pair<double, Vec3>& a, const std::pair<double, Vec3>& b,
                      double scale) {
        const double dt = b.first - a.first;
        return (b.second - a.second) * (scale / dt);
    };
    const Vec3 m1 = (seg == 0) ? tangent(p1, p2, h) : tangent(p0, p2, h);
    const Vec3 m2 = (seg + 2 >= n) ? tangent(p1, p2, h) : tangent(p1, p3, h);

    const double u2 = u * u, u3 = u2 * u;
    return p1.second * (2 * u3 - 3 * u2 + 1) + m1 * (u3 - 2 * u2 + u) +
           p2.second * (-2 * u3 + 3 * u2) + m2 * (u3 - u2);
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario: invalid JSON: ") + e.what());
    }

    ScenarioConfig cfg;
    const auto& r = j.at("radar");
    cfg.radar.carrier_frequency = r.at("carrier_frequency_hz").get<double>();
    cfg.radar.bandwidth = r.at("bandwidth_hz").get<double>();
    cfg.radar.num_range_freq_samples = r.at("num_range_freq_samples").get<std::size_t>();
    cfg.radar.num_pulses = r.at("num_pulses").get<std::size_t>();
    cfg.radar.pulse_interval = r.at("pulse_interval_s").get<double>();
    cfg.radar.validate();

    const auto& p = j.at("platform");
    const std::string type = p.at("type").get<std::string>();
    if (type == "line") {
        cfg.platform.type = PlatformSpec::Type::Line;
        cfg.platform.speed = p.at("speed_mps").get<double>();
        cfg.platform.altitude = p.at("altitude_m").get<double>();
        cfg.platform.ground_range = p.at("ground_range_m").get<double>();
        if (!(cfg.platform.speed > 0.0) || !(cfg.platform.ground_range > 0.0))
            throw std::invalid_argument("scenario: line platform needs speed and ground range");
    } else if (type == "arc") {
        cfg.platform.type = PlatformSpec::Type::Arc;
        cfg.platform.speed = p.at("speed_mps").get<double>();
        cfg.platform.altitude = p.at("altitude_m").get<double>();
        cfg.platform.radius = p.at("radius_m").get<double>();
        if (!(cfg.platform.speed > 0.0) || !(cfg.platform.radius > 0.0))
            throw std::invalid_argument("scenario: arc platform needs speed and radius");
    } else if (type == "waypoints") {
        cfg.platform.type = PlatformSpec::Type::Waypoints;
        cfg.platform.waypoints = waypoints_from(p.at("points"));
    } else {
        throw std::invalid_argument("scenario: unknown platform type: " + type);
    }

    for (const auto& t : j.value("targets", json::array())) {
        TargetSpec ts;
        if (t.contains("waypoints")) {
            ts.waypoints = waypoints_from(t.at("waypoints"));
        } else {
            ts.position = vec3_from(t.at("position_m"));
            if (t.contains("velocity_mps")) ts.velocity = vec3_from(t.at("velocity_mps"));
            if (t.contains("acceleration_mps2"))
                ts.acceleration = vec3_from(t.at("acceleration_mps2"));
        }
        if (t.contains("amplitude")) ts.amplitude = amplitude_from(t.at("amplitude"));
        if (!(std::abs(ts.amplitude) > 0.0))
            throw std::invalid_argument("scenario: target amplitude must be nonzero");
        cfg.targets.push_back(std::move(ts));
    }

    cfg.scene_extent = j.value("scene_extent_m", 0.0);
    if (j.contains("noise")) {
        NoiseSpec ns;
        ns.snr_db = j.at("noise").at("snr_db").get<double>();
        ns.seed = j.at("noise").value("seed", 0ULL);
        cfg.noise = ns;
    }
    cfg.allow_even_pulses = j.value("allow_even_pulses", false);
    if (cfg.radar.num_pulses % 2 == 0 && !cfg.allow_even_pulses)
        throw std::invalid_argument(
            "scenario: even pulse count (set allow_even_pulses to override)");
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scenario: cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_scenario(text);
}

Trajectory build_platform_trajectory(const ScenarioConfig& config) {
    Trajectory traj;
    traj.t = slow_time_axis(config.radar.num_pulses, config.radar.pulse_interval);
    traj.pos.resize(traj.t.size());
    switch (config.platform.type) {
        case PlatformSpec::Type::Line:
            for (std::size_t i = 0; i < traj.t.size(); ++i)
                traj.pos[i] = Vec3{config.platform.speed * traj.t[i],
                                   -config.platform.ground_range, config.platform.altitude};
            break;
        case PlatformSpec::Type::Arc: {
            const double omega = config.platform.speed / config.platform.radius;
            for (std::size_t i = 0; i < traj.t.size(); ++i) {
                const double a = omega * traj.t[i];
                traj.pos[i] = Vec3{config.platform.radius * std::sin(a),
                                   -config.platform.radius * std::cos(a),
                                   config.platform.altitude};
            }
            break;
        }
        case PlatformSpec::Type::Waypoints:
            for (std::size_t i = 0; i < traj.t.size(); ++i)
                traj.pos[i] = waypoint_position(config.platform.waypoints, traj.t[i]);
            break;
    }
    traj.validate();
    return traj;
}

Trajectory build_target_trajectory(const TargetSpec& target, const std::vector<double>& t_axis) {
    Trajectory traj;
    traj.t = t_axis;
    traj.pos.resize(t_axis.size());
    if (!target.waypoints.empty()) {
        for (std::size_t i = 0; i < t_axis.size(); ++i)
            traj.pos[i] = waypoint_position(target.waypoints, t_axis[i]);
    } else {
        for (std::size_t i = 0; i < t_axis.size(); ++i) {
            const double t = t_axis[i];
            traj.pos[i] = target.position + target.velocity * t +
                          target.acceleration * (0.5 * t * t);
        }
    }
    traj.validate();
    return traj;
}

double far_field_phase_bound(const RadarParams& params, const CollectionGeometry& geometry,
                             double scene_extent) {
    if (!(scene_extent > 0.0)) return 0.0;
    const AzimuthWarp warp = build_azimuth_warp(geometry);
    SpatialFrequencyGrid grid = make_spatial_frequency_grid(params, geometry);
    // coarse grid is enough for a bound
    const SpatialFrequencyGrid coarse = grid.with_image_size(33, 33);

    const double h = scene_extent / 2.0;
    double worst = 0.0;
    for (const Vec3 corner : {Vec3{h, h, 0}, Vec3{h, -h, 0}, Vec3{-h, h, 0}, Vec3{-h, -h, 0},
                              Vec3{h, 0, 0}, Vec3{0, h, 0}, Vec3{-h, 0, 0}, Vec3{0, -h, 0}}) {
        Trajectory still;
        still.t = geometry.platform.t;
        still.pos.assign(still.t.size(), geometry.scene_center + corner);
        const auto r_m = target_range(still, geometry.platform);
        PhaseErrorModel model = eta_from_geometry(geometry, r_m, warp);
        decompose_eta(model);
        const PhaseErrorSurface s = exact_surface(model, coarse);
        for (const double v : s.values) worst = std::max(worst, std::abs(v));
    }
    return worst;
}

Scenario build_scenario(const ScenarioConfig& config) {
    Scenario sc;
    sc.params = config.radar;
    const Trajectory platform = build_platform_trajectory(config);
    sc.geometry = derive_geometry(platform, Vec3{0.0, 0.0, 0.0});
    for (const auto& ts : config.targets) {
        PointTarget pt;
        pt.trajectory = build_target_trajectory(ts, platform.t);
        pt.reflectivity = ts.amplitude;
        sc.targets.push_back(std::move(pt));
    }
    sc.noise = config.noise;
    sc.scene_extent = config.scene_extent;

    if (config.scene_extent > 0.0) {
        const double bound = far_field_phase_bound(sc.params, sc.geometry, config.scene_extent);
        if (bound > 0.1) {
            std::ostringstream os;
            os << "scene extent violates the far-field bound: worst-case curvature phase "
               << bound << " rad exceeds 0.1 rad";
            sc.warnings.push_back(os.str());
        }
    }
    return sc;
}

}  // namespace sarmt
