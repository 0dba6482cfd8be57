#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sarmt/error_model.hpp"
#include "test_helpers.hpp"

using namespace sarmt;
using namespace sarmt_test;

namespace {

AzimuthWarp identity_warp(const std::vector<double>& t, double slope = 1.0) {
    AzimuthWarp w;
    w.t = t;
    w.vartheta = t;
    w.slope = slope;
    return w;
}

// model with a given xi polynomial (coefficients over powers of t/t_scale)
PhaseErrorModel model_with_xi(std::vector<double> coeffs, double t_scale) {
    PhaseErrorModel m;
    m.xi.shift = 0.0;
    m.xi.scale = t_scale;
    m.xi.coeffs = std::move(coeffs);
    m.xi_fitted = true;
    return m;
}

// random xi of order <= 6 with phi0 peaking around the given level
PhaseErrorModel random_xi(std::mt19937_64& rng, double t_scale, double y0,
                          double peak_phi0 = 20.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(7, 0.0);
    for (int k = 2; k <= 6; ++k) c[k] = u(rng) * peak_phi0 / y0 / 5.0;
    return model_with_xi(std::move(c), t_scale);
}

}  // namespace

TEST_CASE("eta of a scene-center target is identically zero") {
    auto sc = small_scenario(65, 32);
    const auto g = sc.geometry();
    const auto warp = build_azimuth_warp(g);
    const auto r_m = target_range(sc.target({0, 0, 0}), sc.platform());
    const auto model = eta_from_geometry(g, r_m, warp);
    for (const double v : model.eta) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("constant range offset at broadside: eta = d / sin(phi_ref)") {
    const double phi_ref = 0.82, d = 3.7;
    CollectionGeometry g;
    g.platform.t = slow_time_axis(33, 0.01);
    g.platform.pos.assign(33, Vec3{});
    g.center = center_index(33);
    g.r_c.assign(33, 9000.0);
    g.theta.assign(33, 0.0);
    g.phi.assign(33, phi_ref);
    g.phi_ref = phi_ref;

    std::vector<double> r_m(33, 9000.0 - d);
    const auto model = eta_from_geometry(g, r_m, identity_warp(g.platform.t));
    for (const double v : model.eta)
        CHECK(v == doctest::Approx(d / std::sin(phi_ref)).epsilon(1e-12));
}

TEST_CASE("constant-velocity target: eta matches independent recomputation") {
    auto sc = small_scenario(129, 32);
    const auto g = sc.geometry();
    const auto warp = build_azimuth_warp(g);
    const auto tgt = sc.target({8, -12, 0}, {3, 2, 0});
    const auto r_m = target_range(tgt, sc.platform());
    const auto model = eta_from_geometry(g, r_m, warp);

    // recompute varpi directly and interpolate at the warped times
    std::vector<double> varpi(g.num_pulses());
    for (std::size_t i = 0; i < varpi.size(); ++i)
        varpi[i] = (g.r_c[i] - r_m[i]) / (std::sin(g.phi[i]) * std::cos(g.theta[i]));
    for (std::size_t i = 0; i < varpi.size(); ++i) {
        CHECK(rel_err(model.varpi[i], varpi[i]) < 1e-12);
        // warp is the identity for this geometry, so eta == varpi here
        CHECK(rel_err(model.eta[i], varpi[i]) < 1e-9);
    }
}

TEST_CASE("decompose_eta on exact polynomials") {
    const auto t = slow_time_axis(129, 1.0 / 64.0);

    SUBCASE("linear: 3 + 2t") {
        PhaseErrorModel m;
        m.t_axis = t;
        m.eta.resize(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) m.eta[i] = 3.0 + 2.0 * t[i];
        decompose_eta(m);
        CHECK(m.a0 == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(m.a1 == doctest::Approx(2.0).epsilon(1e-12));
        for (const double t_val : t) CHECK(std::abs(m.xi.eval(t_val)) < 1e-12);
        CHECK_FALSE(m.order_insufficient);
    }

    SUBCASE("pure quadratic: t^2") {
        PhaseErrorModel m;
        m.t_axis = t;
        m.eta.resize(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) m.eta[i] = t[i] * t[i];
        decompose_eta(m);
        CHECK(std::abs(m.a0) < 1e-12);
        CHECK(std::abs(m.a1) < 1e-12);
        for (const double t_val : t)
            CHECK(m.xi.eval(t_val) == doctest::Approx(t_val * t_val).epsilon(1e-10));
    }
}

TEST_CASE("decompose_eta reconstructs a curved-trajectory eta to 1e-6 of its peak") {
    auto sc = small_scenario(257, 32);
    const auto g = sc.geometry();
    const auto warp = build_azimuth_warp(g);
    const auto tgt = sc.target({5, 10, 0}, {2, 1, 0}, {1.0, 0.5, 0});
    const auto r_m = target_range(tgt, sc.platform());
    auto model = eta_from_geometry(g, r_m, warp);
    decompose_eta(model, 6);

    double peak = 0.0;
    for (const double v : model.eta) peak = std::max(peak, std::abs(v));
    CHECK(model.fit_rms < 1e-6 * peak);
    CHECK_FALSE(model.order_insufficient);
}

TEST_CASE("decompose_eta flags insufficient order") {
    const auto t = slow_time_axis(129, 1.0 / 64.0);
    PhaseErrorModel m;
    m.t_axis = t;
    m.eta.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        m.eta[i] = std::pow(t[i], 5) + 0.5 * std::pow(t[i], 4);
    decompose_eta(m, 2);  // quadratic xi cannot carry a quintic
    CHECK(m.order_insufficient);
}

TEST_CASE("exact_surface") {
    auto sc = small_scenario(65, 64);
    const auto grid = make_spatial_frequency_grid(sc.params, sc.geometry());
    const double ts = 0.5;

    SUBCASE("zero xi gives the zero surface") {
        const auto m = model_with_xi({0, 0, 0}, ts);
        const auto s = exact_surface(m, grid);
        for (const double v : s.values) CHECK(v == 0.0);
    }

    SUBCASE("quadratic xi: surface is beta X^2 / Y") {
        const double beta = 4.0e-3;  // xi(t) = beta t^2
        const auto m = model_with_xi({0, 0, beta * ts * ts}, ts);
        const auto s = exact_surface(m, grid);
        for (std::size_t i = 0; i < grid.nx; i += 7)
            for (std::size_t j = 0; j < grid.ny; j += 5) {
                const double x = grid.x(i), y = grid.y(j);
                CHECK(s.at(i, j) == doctest::Approx(beta * x * x / y).epsilon(1e-12));
            }
    }

    SUBCASE("order-6 xi equals brute-force evaluation") {
        std::mt19937_64 rng(5);
        const auto m = random_xi(rng, ts, grid.y0);
        const auto s = exact_surface(m, grid);
        // brute force with plain monomial coefficients in t
        std::vector<double> ct(7, 0.0);
        for (int k = 2; k <= 6; ++k) ct[k] = m.xi.coeffs[k] / std::pow(ts, k);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.nx; ++i)
            for (std::size_t j = 0; j < grid.ny; ++j) {
                const double targ = grid.x(i) / grid.y(j);
                double xi = 0.0;
                for (int k = 6; k >= 2; --k) xi = (xi + ct[k]) * targ;
                xi *= targ;  // one extra power: sum ct_k targ^k for k >= 2
                worst = std::max(worst, std::abs(s.at(i, j) - grid.y(j) * xi));
            }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("ape_profile equals the Y0 row of the exact surface") {
    auto sc = small_scenario(65, 64);
    const auto grid = make_spatial_frequency_grid(sc.params, sc.geometry());
    std::mt19937_64 rng(17);
    const auto m = random_xi(rng, 0.5, grid.y0);

    const auto ape = ape_profile(m, grid);
    const auto s = exact_surface(m, grid);
    const std::size_t jc = center_index(grid.ny);
    REQUIRE(std::abs(grid.y(jc) - grid.y0) < 1e-9);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        CHECK(std::abs(ape.phi0[i] - s.at(i, jc)) < 1e-12);
        // brute force Y0 xi(X/Y0)
        CHECK(std::abs(ape.phi0[i] - grid.y0 * m.xi.eval(grid.x(i) / grid.y0)) < 1e-12);
        // the carried polynomial fit reproduces the samples
        CHECK(std::abs(ape.fit.eval(grid.x(i)) - ape.phi0[i]) < 1e-12);
    }
    CHECK(ape.detrended());
}

TEST_CASE("taylor coefficients") {
    auto sc = small_scenario(65, 64);
    const auto grid = make_spatial_frequency_grid(sc.params, sc.geometry());

    SUBCASE("quadratic xi: phi1 = -phi0 / Y0") {
        const double ts = 0.5, beta = 3e-3;
        const auto m = model_with_xi({0, 0, beta * ts * ts}, ts);
        const auto tc = taylor_coefficients(m, grid);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            CHECK(tc.phi1[i] == doctest::Approx(-tc.phi0[i] / grid.y0).epsilon(1e-12));
            const double x = grid.x(i);
            CHECK(tc.phi0[i] == doctest::Approx(beta * x * x / grid.y0).epsilon(1e-12));
        }
    }

    SUBCASE("phi2 equals half the second Y-difference of the exact surface") {
        std::mt19937_64 rng(29);
        const auto m = random_xi(rng, 0.5, grid.y0);
        const auto tc = taylor_coefficients(m, grid);
        const double h = 2e-3 * grid.y0;
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double fp = exact_surface_value(m, x, grid.y0 + h);
            const double f0 = exact_surface_value(m, x, grid.y0);
            const double fm = exact_surface_value(m, x, grid.y0 - h);
            const double fd = (fp - 2.0 * f0 + fm) / (h * h) / 2.0;
            worst = std::max(worst, std::abs(fd - tc.phi2[i]));
            scale = std::max(scale, std::abs(tc.phi2[i]));
        }
        CHECK(worst < 1e-5 * scale);
    }
}

TEST_CASE("rcm_from_ape closed forms") {
    auto sc = small_scenario(65, 64);
    const auto grid = make_spatial_frequency_grid(sc.params, sc.geometry());
    const double x_scale = grid.x_max_abs();

    SUBCASE("constant profile maps to c / Y0") {
        ApeProfile ape;
        ape.x_axis = grid.x_axis();
        ape.fit = {0.0, x_scale, {0.04}};
        ape.phi0.assign(grid.nx, 0.04);
        ape.has_fit = true;
        const auto phi1 = rcm_from_ape(ape, grid.y0);
        for (const double v : phi1)
            CHECK(v == doctest::Approx(0.04 / grid.y0).epsilon(1e-12));
    }

    SUBCASE("linear profile maps to zero") {
        ApeProfile ape;
        ape.x_axis = grid.x_axis();
        ape.fit = {0.0, x_scale, {0.0, 0.04}};
        ape.phi0.resize(grid.nx);
        for (std::size_t i = 0; i < grid.nx; ++i) ape.phi0[i] = 0.04 * grid.x(i) / x_scale;
        ape.has_fit = true;
        for (const double v : rcm_from_ape(ape, grid.y0)) CHECK(std::abs(v) < 1e-15);
    }

    SUBCASE("cubic gamma X^3 maps to -2 gamma X^3 / Y0") {
        const double gamma = 2.0 / std::pow(x_scale, 3);
        ApeProfile ape;
        ape.x_axis = grid.x_axis();
        ape.fit = {0.0, x_scale, {0.0, 0.0, 0.0, gamma * std::pow(x_scale, 3)}};
        ape.has_fit = true;
        const auto phi1 = rcm_from_ape(ape, grid.y0);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            CHECK(phi1[i] ==
                  doctest::Approx(-2.0 * gamma * x * x * x / grid.y0).epsilon(1e-10));
        }
    }

    SUBCASE("scenario profile agrees with taylor_coefficients") {
        std::mt19937_64 rng(31);
        const auto m = random_xi(rng, 0.5, grid.y0);
        const auto tc = taylor_coefficients(m, grid);
        const auto phi1 = rcm_from_ape(ape_profile(m, grid), grid.y0);
        for (std::size_t i = 0; i < grid.nx; ++i)
            CHECK(std::abs(phi1[i] - tc.phi1[i]) < 1e-9);
    }

    SUBCASE("sampled-only profile is regularized through a fit") {
        std::mt19937_64 rng(37);
        const auto m = random_xi(rng, 0.5, grid.y0);
        auto full = ape_profile(m, grid);
        ApeProfile samples_only;
        samples_only.x_axis = full.x_axis;
        samples_only.phi0 = full.phi0;
        const auto phi1 = rcm_from_ape(samples_only, grid.y0);
        const auto tc = taylor_coefficients(m, grid);
        for (std::size_t i = 0; i < grid.nx; ++i)
            CHECK(std::abs(phi1[i] - tc.phi1[i]) < 1e-6);
    }
}

TEST_CASE("surface_from_ape") {
    auto sc = small_scenario(65, 64);
    const auto grid = make_spatial_frequency_grid(sc.params, sc.geometry());
    std::mt19937_64 rng(41);
    const auto m = random_xi(rng, 0.5, grid.y0);
    const auto ape = ape_profile(m, grid);

    SUBCASE("row at Y0 reproduces phi0 exactly") {
        const auto s = surface_from_ape(ape, grid);
        const std::size_t jc = center_index(grid.ny);
        for (std::size_t i = 0; i < grid.nx; ++i)
            CHECK(std::abs(s.at(i, jc) - ape.phi0[i]) < 1e-12);
    }

    SUBCASE("quadratic profile: surface is gamma Y0 X^2 / Y") {
        const double x_scale = grid.x_max_abs();
        const double gamma = 10.0 / (x_scale * x_scale);
        ApeProfile q;
        q.x_axis = grid.x_axis();
        q.fit = {0.0, x_scale, {0.0, 0.0, gamma * x_scale * x_scale}};
        q.has_fit = true;
        const auto s = surface_from_ape(q, grid);
        for (std::size_t i = 0; i < grid.nx; i += 9)
            for (std::size_t j = 0; j < grid.ny; j += 7) {
                const double x = grid.x(i), y = grid.y(j);
                CHECK(s.at(i, j) ==
                      doctest::Approx(gamma * grid.y0 * x * x / y).epsilon(1e-10));
            }
    }

    SUBCASE("identity with the exact surface (the core claim)") {
        const auto via_ape = surface_from_ape(ape, grid);
        const auto exact = exact_surface(m, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < via_ape.values.size(); ++i)
            worst = std::max(worst, std::abs(via_ape.values[i] - exact.values[i]));
        CHECK(worst < 1e-9);
        CHECK_FALSE(via_ape.extrapolated);
    }

    SUBCASE("adding a linear term alpha X adds exactly alpha X at every Y") {
        const auto base = surface_from_ape(ape, grid);
        ApeProfile shifted = ape;
        const double alpha = 0.04 / shifted.fit.scale;  // passes the detrend gate
        shifted.fit.coeffs.resize(std::max<std::size_t>(2, shifted.fit.coeffs.size()));
        shifted.fit.coeffs[1] += alpha * shifted.fit.scale;
        const auto s = surface_from_ape(shifted, grid);
        for (std::size_t i = 0; i < grid.nx; i += 5)
            for (std::size_t j = 0; j < grid.ny; j += 5)
                CHECK(s.at(i, j) - base.at(i, j) ==
                      doctest::Approx(alpha * grid.x(i)).epsilon(1e-9));
    }

    SUBCASE("adding a constant c adds exactly c Y / Y0") {
        const auto base = surface_from_ape(ape, grid);
        ApeProfile shifted = ape;
        const double c = 0.04;
        shifted.fit.coeffs[0] += c;
        const auto s = surface_from_ape(shifted, grid);
        for (std::size_t i = 0; i < grid.nx; i += 5)
            for (std::size_t j = 0; j < grid.ny; j += 5)
                CHECK(s.at(i, j) - base.at(i, j) ==
                      doctest::Approx(c * grid.y(j) / grid.y0).epsilon(1e-9));
    }

    SUBCASE("non-detrended profile rejected") {
        ApeProfile bad = ape;
        bad.fit.coeffs[0] += 0.3;
        CHECK_THROWS_AS(surface_from_ape(bad, grid), std::invalid_argument);
    }

    SUBCASE("argument beyond the fitted domain flags extrapolation") {
        SpatialFrequencyGrid wide = grid;
        wide.y_start = 0.3 * grid.y0;  // |Y0 X / Y| reaches well past the fitted X domain
        wide.y_step = 1.4 * grid.y0 / static_cast<double>(grid.ny);
        const auto s = surface_from_ape(ape, wide);
        CHECK(s.extrapolated);
    }
}

TEST_CASE("Eq. (14) consistency: rcm_from_ape equals the Y-derivative coefficient") {
    auto sc = small_scenario(65, 64);
    const auto grid = make_spatial_frequency_grid(sc.params, sc.geometry());
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 5; ++trial) {
        const auto m = random_xi(rng, 0.5, grid.y0);
        const auto phi1 = rcm_from_ape(ape_profile(m, grid), grid.y0);
        const double h = 1e-3 * grid.y0;
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const double fd = (exact_surface_value(m, x, grid.y0 + h) -
                               exact_surface_value(m, x, grid.y0 - h)) /
                              (2.0 * h);
            worst = std::max(worst, std::abs(fd - phi1[i]));
            scale = std::max(scale, std::abs(phi1[i]));
        }
        CHECK(worst < 1e-5 * scale);
    }
}

TEST_CASE("Eq. (10) truncation shrinks as the cube of the band") {
    auto sc = small_scenario(65, 64);
    const auto grid = make_spatial_frequency_grid(sc.params, sc.geometry());
    std::mt19937_64 rng(47);
    const auto m = random_xi(rng, 0.5, grid.y0);
    const auto tc = taylor_coefficients(m, grid);

    auto residual = [&](double band_scale) {
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.nx; ++i)
            for (std::size_t j = 0; j < grid.ny; ++j) {
                const double x = grid.x(i);
                const double dy = (grid.y(j) - grid.y0) * band_scale;
                const double y = grid.y0 + dy;
                const double taylor2 = tc.phi0[i] + tc.phi1[i] * dy + tc.phi2[i] * dy * dy;
                worst = std::max(worst, std::abs(exact_surface_value(m, x, y) - taylor2));
            }
        return worst;
    };
    const double full = residual(1.0);
    const double half = residual(0.5);
    REQUIRE(full > 0.0);
    const double ratio = full / half;
    CHECK(ratio > 6.0);
    CHECK(ratio < 10.0);
}
