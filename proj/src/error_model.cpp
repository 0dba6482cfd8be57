#include "sarmt/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sarmt {

namespace {

// 4-point Lagrange interpolation of uniformly sampled values at time tq.
double interp_uniform(const std::vector<double>& t, const std::vector<double>& v, double tq) {
    const std::size_t n = t.size();
    const double dt = t[1] - t[0];
    const double fpos = (tq - t[0]) / dt;
    const auto start = std::clamp<long long>(static_cast<long long>(std::floor(fpos)) - 1, 0,
                                             static_cast<long long>(n) - 4);
    double acc = 0.0;
    for (long long i = start; i < start + 4; ++i) {
        double w = 1.0;
        for (long long j = start; j < start + 4; ++j) {
            if (j == i) continue;
            w *= (fpos - static_cast<double>(j)) / static_cast<double>(i - j);
        }
        acc += w * v[static_cast<std::size_t>(i)];
    }
    return acc;
}

void require_fitted(const PhaseErrorModel& model) {
    if (!model.xi_fitted)
        throw std::invalid_argument("phase error model: xi not fitted (run decompose_eta)");
}

}  // namespace

double ApeProfile::trend_constant() const {
    if (has_fit) return fit.coeff(0);
    return 0.0;
}

double ApeProfile::trend_linear_at_edge() const {
    if (has_fit) return fit.coeff(1);
    return 0.0;
}

bool ApeProfile::detrended(double tol_rad) const {
    return std::abs(trend_constant()) < tol_rad && std::abs(trend_linear_at_edge()) < tol_rad;
}

PhaseErrorModel eta_from_geometry(const CollectionGeometry& geometry,
                                  const std::vector<double>& r_m, const AzimuthWarp& warp) {
    const std::size_t n = geometry.num_pulses();
    if (r_m.size() != n || warp.vartheta.size() != n)
        throw std::invalid_argument("eta_from_geometry: grid mismatch");

    PhaseErrorModel model;
    model.t_axis = geometry.platform.t;
    model.varpi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double denom = std::sin(geometry.phi[i]) * std::cos(geometry.theta[i]);
        if (!(denom > 0.0))
            throw std::invalid_argument("eta_from_geometry: sin(phi) cos(theta) must be positive");
        model.varpi[i] = (geometry.r_c[i] - r_m[i]) / denom;
    }
    model.eta.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        model.eta[i] = interp_uniform(model.t_axis, model.varpi, warp.vartheta[i]);
    return model;
}

void decompose_eta(PhaseErrorModel& model, int order, double rel_tolerance) {
    const std::size_t n = model.eta.size();
    if (n < static_cast<std::size_t>(order) + 1)
        throw std::invalid_argument("decompose_eta: too few samples");
    if (order < 2) throw std::invalid_argument("decompose_eta: order must be >= 2");
    const std::size_t c = center_index(n);
    const double dt = model.t_axis[1] - model.t_axis[0];
    if (std::abs(model.t_axis[c]) > 1e-9 * dt)
        throw std::invalid_argument("decompose_eta: slow-time grid not centered");

    model.a0 = model.eta[c];

    // slope at t = 0 from a local quadratic fit around the center pulse
    const std::size_t half = std::min<std::size_t>(4, std::min(c, n - 1 - c));
    std::vector<double> tw(model.t_axis.begin() + (c - half), model.t_axis.begin() + (c + half + 1));
    std::vector<double> ew(model.eta.begin() + (c - half), model.eta.begin() + (c + half + 1));
    const auto local = fit_polynomial(tw, ew, 2);
    model.a1 = local.deriv(0.0);

    // xi: fit the remainder on powers 1..P of t/t_scale, then fold the linear
    // coefficient back into a1 so xi is quadratic-and-higher by construction
    const double t_scale = std::max(std::abs(model.t_axis.front()), std::abs(model.t_axis.back()));
    std::vector<double> rem(n);
    for (std::size_t i = 0; i < n; ++i)
        rem[i] = model.eta[i] - model.a0 - model.a1 * model.t_axis[i];
    auto fit = fit_polynomial_fixed_scale(model.t_axis, rem, order, 1, 0.0, t_scale);
    model.a1 += fit.coeffs[1] / t_scale;
    fit.coeffs[1] = 0.0;
    model.xi = fit;

    model.residual.resize(n);
    double acc = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double rec = model.a0 + model.a1 * model.t_axis[i] + model.xi.eval(model.t_axis[i]);
        model.residual[i] = model.eta[i] - rec;
        acc += model.residual[i] * model.residual[i];
        peak = std::max(peak, std::abs(model.eta[i]));
    }
    model.fit_rms = std::sqrt(acc / static_cast<double>(n));
    model.xi_fitted = true;
    model.order_insufficient = peak > 0.0 && model.fit_rms > rel_tolerance * peak;
}

double exact_surface_value(const PhaseErrorModel& model, double x, double y) {
    require_fitted(model);
    return y * model.xi.eval(x / y);
}

PhaseErrorSurface exact_surface(const PhaseErrorModel& model, const SpatialFrequencyGrid& grid) {
    require_fitted(model);
    PhaseErrorSurface s;
    s.grid = grid;
    s.values.resize(grid.nx * grid.ny);
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        for (std::size_t j = 0; j < grid.ny; ++j) {
            const double y = grid.y(j);
            s.values[i * grid.ny + j] = y * model.xi.eval(x / y);
        }
    }
    return s;
}

ApeProfile ape_profile(const PhaseErrorModel& model, const SpatialFrequencyGrid& grid) {
    require_fitted(model);
    ApeProfile ape;
    ape.x_axis = grid.x_axis();
    ape.phi0.resize(grid.nx);
    for (std::size_t i = 0; i < grid.nx; ++i)
        ape.phi0[i] = grid.y0 * model.xi.eval(grid.x(i) / grid.y0);

    // phi0(X) = Y0 xi(X/Y0) is itself a polynomial in X; carry it exactly
    ape.fit.shift = 0.0;
    ape.fit.scale = grid.y0 * model.xi.scale;
    ape.fit.coeffs.resize(model.xi.coeffs.size());
    for (std::size_t k = 0; k < model.xi.coeffs.size(); ++k)
        ape.fit.coeffs[k] = grid.y0 * model.xi.coeffs[k];
    ape.has_fit = true;
    return ape;
}

ApeProfile ape_profile_from_samples(std::vector<double> x_axis, std::vector<double> phi0,
                                    int fit_order) {
    if (x_axis.size() != phi0.size() || x_axis.empty())
        throw std::invalid_argument("ape_profile_from_samples: bad input");
    ApeProfile ape;
    const double x_scale = std::max(std::abs(x_axis.front()), std::abs(x_axis.back()));
    ape.fit = fit_polynomial_fixed_scale(x_axis, phi0, fit_order, 0, 0.0, x_scale);
    ape.x_axis = std::move(x_axis);
    ape.phi0 = std::move(phi0);
    ape.has_fit = true;
    return ape;
}

TaylorCoefficients taylor_coefficients(const PhaseErrorModel& model,
                                       const SpatialFrequencyGrid& grid) {
    require_fitted(model);
    TaylorCoefficients tc;
    tc.x_axis = grid.x_axis();
    tc.phi0.resize(grid.nx);
    tc.phi1.resize(grid.nx);
    tc.phi2.resize(grid.nx);
    const double y0 = grid.y0;
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        const double t = x / y0;
        const double xi = model.xi.eval(t);
        const double xi1 = model.xi.deriv(t);
        const double xi2 = model.xi.deriv2(t);
        tc.phi0[i] = y0 * xi;
        tc.phi1[i] = xi - t * xi1;
        tc.phi2[i] = x * x * xi2 / (2.0 * y0 * y0 * y0);
    }
    return tc;
}

std::vector<double> rcm_from_ape(const ApeProfile& ape, double y0) {
    if (!(y0 > 0.0)) throw std::invalid_argument("rcm_from_ape: y0 must be positive");
    const ApeProfile* p = &ape;
    ApeProfile refit;
    if (!ape.has_fit) {
        // sampled-only profile: regularize by fitting before differentiating
        refit = ape_profile_from_samples(ape.x_axis, ape.phi0);
        p = &refit;
    }
    std::vector<double> phi1(p->x_axis.size());
    for (std::size_t i = 0; i < phi1.size(); ++i) {
        const double x = p->x_axis[i];
        phi1[i] = (p->fit.eval(x) - x * p->fit.deriv(x)) / y0;
    }
    return phi1;
}

PhaseErrorSurface surface_from_ape(const ApeProfile& ape, const SpatialFrequencyGrid& grid) {
    const ApeProfile* p = &ape;
    ApeProfile refit;
    if (!ape.has_fit) {
        refit = ape_profile_from_samples(ape.x_axis, ape.phi0);
        p = &refit;
    }
    if (!p->detrended())
        throw std::invalid_argument(
            "surface_from_ape: profile carries constant/linear content; detrend it first");

    PhaseErrorSurface s;
    s.grid = grid;
    s.values.resize(grid.nx * grid.ny);
    const double y0 = grid.y0;
    const double domain = 1.1 * p->fit.scale;
    for (std::size_t i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        for (std::size_t j = 0; j < grid.ny; ++j) {
            const double y = grid.y(j);
            const double arg = y0 * x / y;
            if (std::abs(arg) > domain) s.extrapolated = true;
            s.values[i * grid.ny + j] = (y / y0) * p->fit.eval(arg);
        }
    }
    return s;
}

}  // namespace sarmt
