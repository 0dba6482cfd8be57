#ifndef SARMT_ECHO_SIM_HPP
#define SARMT_ECHO_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sarmt/geometry.hpp"
#include "sarmt/types.hpp"

namespace sarmt {

enum class Stage : std::uint8_t {
    Raw,
    MotionCompensated,
    RangeResampled,
    RcmLinearized,
    Keystoned,
    Image,
};

std::string stage_name(Stage s);
Stage stage_from_name(const std::string& name);

struct PointTarget {
    Trajectory trajectory;
    cdouble reflectivity{1.0, 0.0};
};

// 2-D phase history, rows = pulses (slow time), cols = range frequency.
struct PhaseHistory {
    ComplexGrid data;
    std::vector<double> t_axis;   // s
    std::vector<double> fr_axis;  // Hz, uniform on [-B/2, B/2]
    Stage stage = Stage::Raw;
    bool empty_scene = false;     // set when simulated with no targets

    std::size_t num_pulses() const { return data.rows(); }
    std::size_t num_freqs() const { return data.cols(); }
    void require_stage(Stage expected) const;
};

// Uniform range-frequency axis on [-B/2, B/2] with 0 at index floor(n/2).
std::vector<double> range_freq_axis(const RadarParams& params);

struct NoiseSpec {
    double snr_db = 0.0;
    std::uint64_t seed = 0;
};

// Demodulated, match-filtered point-target phase history: each target adds
// A * exp(-j (4 pi / c)(fc + fr) r_m(t)). Optional complex white Gaussian
// noise with the given SNR relative to the strongest target amplitude.
PhaseHistory simulate(const RadarParams& params, const CollectionGeometry& geometry,
                      const std::vector<PointTarget>& targets,
                      const NoiseSpec* noise = nullptr);

// Multiplies each sample by exp(+j (4 pi / c)(fc + fr) r_c(t)), referencing
// the echoes to the scene center. Unit-modulus, so energy is unchanged.
PhaseHistory motion_compensate(const PhaseHistory& ph, const RadarParams& params,
                               const CollectionGeometry& geometry);

}  // namespace sarmt

#endif
