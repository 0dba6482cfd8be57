#include "sarmt/echo_sim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace sarmt {

std::string stage_name(Stage s) {
    switch (s) {
        case Stage::Raw: return "raw";
        case Stage::MotionCompensated: return "motion_compensated";
        case Stage::RangeResampled: return "range_resampled";
        case Stage::RcmLinearized: return "rcm_linearized";
        case Stage::Keystoned: return "keystoned";
        case Stage::Image: return "image";
    }
    throw std::logic_error("unreachable stage");
}

Stage stage_from_name(const std::string& name) {
    for (auto s : {Stage::Raw, Stage::MotionCompensated, Stage::RangeResampled,
                   Stage::RcmLinearized, Stage::Keystoned, Stage::Image})
        if (stage_name(s) == name) return s;
    throw std::invalid_argument("unknown stage tag: " + name);
}

void PhaseHistory::require_stage(Stage expected) const {
    if (stage != expected)
        throw std::invalid_argument("phase history stage is " + stage_name(stage) +
                                    ", expected " + stage_name(expected));
}

std::vector<double> range_freq_axis(const RadarParams& params) {
    params.validate();
    const std::size_t n = params.num_range_freq_samples;
    const double step = params.bandwidth / static_cast<double>(n - 1);
    std::vector<double> fr(n);
    const auto c = static_cast<long long>(center_index(n));
    for (std::size_t i = 0; i < n; ++i)
        fr[i] = (static_cast<long long>(i) - c) * step;
    return fr;
}

PhaseHistory simulate(const RadarParams& params, const CollectionGeometry& geometry,
                      const std::vector<PointTarget>& targets, const NoiseSpec* noise) {
    params.validate();
    if (geometry.num_pulses() != params.num_pulses)
        throw std::invalid_argument("simulate: geometry pulse count != radar params");

    PhaseHistory ph;
    ph.t_axis = geometry.platform.t;
    ph.fr_axis = range_freq_axis(params);
    ph.data = ComplexGrid(params.num_pulses, params.num_range_freq_samples);
    ph.stage = Stage::Raw;
    ph.empty_scene = targets.empty();

    const double k = 2.0 * kTwoPi / params.propagation_speed;  // 4 pi / c
    double peak_amplitude = 0.0;
    for (const auto& tgt : targets) {
        if (!(std::abs(tgt.reflectivity) > 0.0))
            throw std::invalid_argument("simulate: target reflectivity must be nonzero");
        peak_amplitude = std::max(peak_amplitude, std::abs(tgt.reflectivity));
        const auto r_m = target_range(tgt.trajectory, geometry.platform);
        for (std::size_t p = 0; p < ph.num_pulses(); ++p) {
            const double kr = k * r_m[p];
            for (std::size_t f = 0; f < ph.num_freqs(); ++f) {
                const double phase = -kr * (params.carrier_frequency + ph.fr_axis[f]);
                ph.data.at(p, f) += tgt.reflectivity * cdouble{std::cos(phase), std::sin(phase)};
            }
        }
    }

    if (noise != nullptr && !targets.empty()) {
        // SNR referenced to the strongest target's per-sample power
        const double noise_power =
            peak_amplitude * peak_amplitude / std::pow(10.0, noise->snr_db / 10.0);
        const double sigma = std::sqrt(noise_power / 2.0);
        std::mt19937_64 rng(noise->seed);
        std::normal_distribution<double> gauss(0.0, sigma);
        for (auto& v : ph.data.raw()) v += cdouble{gauss(rng), gauss(rng)};
    }
    return ph;
}

PhaseHistory motion_compensate(const PhaseHistory& ph, const RadarParams& params,
                               const CollectionGeometry& geometry) {
    ph.require_stage(Stage::Raw);
    if (geometry.num_pulses() != ph.num_pulses())
        throw std::invalid_argument("motion_compensate: geometry pulse count mismatch");

    PhaseHistory out = ph;
    const double k = 2.0 * kTwoPi / params.propagation_speed;
    for (std::size_t p = 0; p < out.num_pulses(); ++p) {
        const double kr = k * geometry.r_c[p];
        for (std::size_t f = 0; f < out.num_freqs(); ++f) {
            const double phase = kr * (params.carrier_frequency + out.fr_axis[f]);
            out.data.at(p, f) *= cdouble{std::cos(phase), std::sin(phase)};
        }
    }
    out.stage = Stage::MotionCompensated;
    return out;
}

}  // namespace sarmt
