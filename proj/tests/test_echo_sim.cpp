#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sarmt/echo_sim.hpp"
#include "test_helpers.hpp"

using namespace sarmt;
using namespace sarmt_test;

namespace {

// wraps to (-pi, pi]
double wrap(double a) {
    while (a > kPi) a -= kTwoPi;
    while (a <= -kPi) a += kTwoPi;
    return a;
}

}  // namespace

TEST_CASE("scene-center target is the all-ones phasor after motion compensation") {
    auto sc = small_scenario(65, 64);
    const auto g = sc.geometry();
    const cdouble amp{0.7, -0.4};
    const auto ph = simulate(sc.params, g, {{sc.target({0, 0, 0}), amp}});
    const auto mc = motion_compensate(ph, sc.params, g);
    for (const auto& v : mc.data.raw()) {
        CHECK(std::abs(v - amp) < 1e-9);
    }
}

TEST_CASE("line-of-sight offset target: constant compensated phase -(4pi/c)(fc+fr)d") {
    auto sc = small_scenario(65, 64);
    const auto g = sc.geometry();
    const auto plat = sc.platform();
    const double d = 0.4;  // keep |phase| small enough to compare unwrapped

    Trajectory tgt;
    tgt.t = plat.t;
    tgt.pos.resize(plat.t.size());
    for (std::size_t i = 0; i < plat.t.size(); ++i)
        tgt.pos[i] = plat.pos[i] * (1.0 - (g.r_c[i] + d) / g.r_c[i]);
    const auto mc = motion_compensate(simulate(sc.params, g, {{tgt, {1, 0}}}), sc.params, g);

    const double k = 2.0 * kTwoPi / sc.params.propagation_speed;
    for (std::size_t p = 0; p < mc.num_pulses(); ++p)
        for (std::size_t f = 0; f < mc.num_freqs(); ++f) {
            const double expect =
                wrap(-k * (sc.params.carrier_frequency + mc.fr_axis[f]) * d);
            CHECK(std::abs(wrap(std::arg(mc.data.at(p, f)) - expect)) < 5e-9);
        }
}

TEST_CASE("superposition: two targets equal the sum of singles") {
    auto sc = small_scenario(33, 32);
    const auto g = sc.geometry();
    PointTarget t1{sc.target({15, -5, 0}, {2, 1, 0}), {1.0, 0.2}};
    PointTarget t2{sc.target({-10, 8, 0}), {0.4, -0.9}};
    const auto both = simulate(sc.params, g, {t1, t2});
    const auto a = simulate(sc.params, g, {t1});
    const auto b = simulate(sc.params, g, {t2});
    for (std::size_t i = 0; i < both.data.size(); ++i)
        CHECK(std::abs(both.data.raw()[i] - (a.data.raw()[i] + b.data.raw()[i])) < 1e-12);
}

TEST_CASE("reflectivity scaling is exact linearity") {
    auto sc = small_scenario(33, 32);
    const auto g = sc.geometry();
    const cdouble s{2.5, -1.5};
    PointTarget t1{sc.target({15, -5, 0}), {0.3, 0.8}};
    PointTarget scaled = t1;
    scaled.reflectivity *= s;
    const auto base = simulate(sc.params, g, {t1});
    const auto big = simulate(sc.params, g, {scaled});
    for (std::size_t i = 0; i < base.data.size(); ++i)
        CHECK(std::abs(big.data.raw()[i] - s * base.data.raw()[i]) < 1e-12);
}

TEST_CASE("motion compensation preserves energy and inverts exactly") {
    auto sc = small_scenario(33, 32);
    const auto g = sc.geometry();
    const auto raw = simulate(sc.params, g, {{sc.target({20, 10, 0}, {-3, 4, 0}), {1, 0}}});
    const auto mc = motion_compensate(raw, sc.params, g);

    CHECK(rel_err(mc.data.energy(), raw.data.energy()) < 1e-12);

    // conjugate phasor (same evaluation order as the library) restores the grid
    const double k = 2.0 * kTwoPi / sc.params.propagation_speed;
    auto restored = mc;
    for (std::size_t p = 0; p < mc.num_pulses(); ++p) {
        const double kr = k * g.r_c[p];
        for (std::size_t f = 0; f < mc.num_freqs(); ++f) {
            const double phase = kr * (sc.params.carrier_frequency + mc.fr_axis[f]);
            restored.data.at(p, f) *= cdouble{std::cos(phase), -std::sin(phase)};
        }
    }
    for (std::size_t i = 0; i < raw.data.size(); ++i)
        CHECK(std::abs(restored.data.raw()[i] - raw.data.raw()[i]) < 1e-12);
}

TEST_CASE("moving target: compensated phase matches per-sample recomputation") {
    auto sc = small_scenario(33, 32);
    const auto g = sc.geometry();
    const auto plat = sc.platform();
    const auto tgt = sc.target({5, 3, 0}, {6, -2, 0});
    const auto r_m = target_range(tgt, plat);
    const auto mc = motion_compensate(simulate(sc.params, g, {{tgt, {1, 0}}}), sc.params, g);

    const double k = 2.0 * kTwoPi / sc.params.propagation_speed;
    for (std::size_t p = 0; p < mc.num_pulses(); ++p)
        for (std::size_t f = 0; f < mc.num_freqs(); ++f) {
            const double expect =
                wrap(k * (sc.params.carrier_frequency + mc.fr_axis[f]) * (g.r_c[p] - r_m[p]));
            CHECK(std::abs(wrap(std::arg(mc.data.at(p, f)) - expect)) < 1e-8);
        }
}

TEST_CASE("empty target list yields a zero grid flagged in metadata") {
    auto sc = small_scenario(33, 32);
    const auto ph = simulate(sc.params, sc.geometry(), {});
    CHECK(ph.empty_scene);
    CHECK(ph.data.energy() == 0.0);
}

TEST_CASE("stage mismatch rejected") {
    auto sc = small_scenario(33, 32);
    const auto g = sc.geometry();
    const auto ph = simulate(sc.params, g, {});
    const auto mc = motion_compensate(ph, sc.params, g);
    CHECK_THROWS_AS(motion_compensate(mc, sc.params, g), std::invalid_argument);
}

TEST_CASE("noise is deterministic for a fixed seed and scales with SNR") {
    auto sc = small_scenario(33, 32);
    const auto g = sc.geometry();
    const std::vector<PointTarget> tgts{{sc.target({0, 0, 0}), {1, 0}}};
    const NoiseSpec n1{30.0, 42}, n2{10.0, 42};
    const auto a = simulate(sc.params, g, tgts, &n1);
    const auto b = simulate(sc.params, g, tgts, &n1);
    const auto c = simulate(sc.params, g, tgts, &n2);
    CHECK(a.data.raw() == b.data.raw());

    const auto clean = simulate(sc.params, g, tgts);
    double p30 = 0.0, p10 = 0.0;
    for (std::size_t i = 0; i < clean.data.size(); ++i) {
        p30 += std::norm(a.data.raw()[i] - clean.data.raw()[i]);
        p10 += std::norm(c.data.raw()[i] - clean.data.raw()[i]);
    }
    // 20 dB power ratio, loose bound for finite samples
    CHECK(p10 / p30 > 50.0);
    CHECK(p10 / p30 < 200.0);
}
