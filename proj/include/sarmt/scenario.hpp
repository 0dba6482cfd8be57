#ifndef SARMT_SCENARIO_HPP
#define SARMT_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sarmt/echo_sim.hpp"
#include "sarmt/geometry.hpp"
#include "sarmt/types.hpp"

namespace sarmt {

struct PlatformSpec {
    enum class Type { Line, Arc, Waypoints };
    Type type = Type::Line;
    // line: straight track along +x at (x = speed t, y = -ground_range, z = altitude)
    // arc: circle of `radius` about the scene center at `altitude`, speed along it
    double speed = 0.0;         // m/s
    double altitude = 0.0;      // m
    double ground_range = 0.0;  // m (line)
    double radius = 0.0;        // m (arc)
    std::vector<std::pair<double, Vec3>> waypoints;  // (t, position)
};

struct TargetSpec {
    Vec3 position;      // m, at t = 0
    Vec3 velocity;      // m/s
    Vec3 acceleration;  // m/s^2
    cdouble amplitude{1.0, 0.0};
    std::vector<std::pair<double, Vec3>> waypoints;  // optional, overrides the above
};

struct ScenarioConfig {
    RadarParams radar;
    PlatformSpec platform;
    std::vector<TargetSpec> targets;
    double scene_extent = 0.0;  // m, guard box width around the scene center
    std::optional<NoiseSpec> noise;
    bool allow_even_pulses = false;
};

ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

Trajectory build_platform_trajectory(const ScenarioConfig& config);
Trajectory build_target_trajectory(const TargetSpec& target, const std::vector<double>& t_axis);

struct Scenario {
    RadarParams params;
    CollectionGeometry geometry;
    std::vector<PointTarget> targets;
    std::optional<NoiseSpec> noise;
    double scene_extent = 0.0;
    std::vector<std::string> warnings;
};

// Builds geometry and targets, validating physical guards. Scenes whose
// worst-case wavefront-curvature phase residual exceeds 0.1 rad get a
// warning (stationary points would no longer focus cleanly through the
// reformatting chain).
Scenario build_scenario(const ScenarioConfig& config);

// Worst-case |Y xi(X/Y)| over the guard box for a stationary scatterer.
double far_field_phase_bound(const RadarParams& params, const CollectionGeometry& geometry,
                             double scene_extent);

}  // namespace sarmt

#endif
