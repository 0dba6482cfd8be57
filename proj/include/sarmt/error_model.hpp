#ifndef SARMT_ERROR_MODEL_HPP
#define SARMT_ERROR_MODEL_HPP

#include <optional>
#include <vector>

#include "sarmt/geometry.hpp"
#include "sarmt/pfa.hpp"
#include "sarmt/polynomial.hpp"
#include "sarmt/types.hpp"

namespace sarmt {

// Effective range error of a moving target through the reformatting chain:
//   varpi(t) = [r_c(t) - r_m(t)] / (sin(phi) cos(theta))      (meters)
//   eta(t)   = varpi(vartheta_a(t)) = a0 + a1 t + xi(t)
// xi holds the quadratic-and-higher content (powers 2..P of t/t_scale) and is
// the sole source of the residual 2-D phase error Y xi(X/Y).
struct PhaseErrorModel {
    std::vector<double> t_axis;  // s
    std::vector<double> varpi;   // m
    std::vector<double> eta;     // m
    double a0 = 0.0;             // m
    double a1 = 0.0;             // m/s
    ScaledPolynomial xi;         // t-units (s -> m), shift 0
    std::vector<double> residual;
    double fit_rms = 0.0;
    bool xi_fitted = false;
    bool order_insufficient = false;
};

// Residual 2-D phase error sampled on a spatial-frequency grid; rows follow X,
// columns follow Y, matching the data layout of PhaseHistory/ComplexImage.
struct PhaseErrorSurface {
    std::vector<double> values;  // rad, row-major nx x ny
    SpatialFrequencyGrid grid;
    bool extrapolated = false;

    double at(std::size_t i, std::size_t j) const { return values[i * grid.ny + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * grid.ny + j]; }
};

// Azimuth phase error phi0(X) = Y0 xi(X/Y0), carried as samples plus a
// polynomial fit over X (shift 0). All derivative/off-grid evaluations use
// the fit.
struct ApeProfile {
    std::vector<double> x_axis;  // rad/m
    std::vector<double> phi0;    // rad
    ScaledPolynomial fit;
    bool has_fit = false;

    // least-squares constant and linear content (rad at X=0, rad at |X|=scale)
    double trend_constant() const;
    double trend_linear_at_edge() const;
    bool detrended(double tol_rad = 0.05) const;
};

struct TaylorCoefficients {
    std::vector<double> x_axis;
    std::vector<double> phi0;  // rad
    std::vector<double> phi1;  // rad per (rad/m), i.e. meters
    std::vector<double> phi2;  // rad per (rad/m)^2
};

PhaseErrorModel eta_from_geometry(const CollectionGeometry& geometry,
                                  const std::vector<double>& r_m, const AzimuthWarp& warp);

// Splits eta into a0 (value at t=0), a1 (slope at t=0, refined by least
// squares so xi carries no linear content) and the polynomial xi.
void decompose_eta(PhaseErrorModel& model, int order = 6, double rel_tolerance = 1e-4);

// Exact coupling error Y xi(X/Y), evaluated analytically.
double exact_surface_value(const PhaseErrorModel& model, double x, double y);
PhaseErrorSurface exact_surface(const PhaseErrorModel& model, const SpatialFrequencyGrid& grid);

ApeProfile ape_profile(const PhaseErrorModel& model, const SpatialFrequencyGrid& grid);

// Builds a profile from estimator samples; fit_order defaults to 8.
ApeProfile ape_profile_from_samples(std::vector<double> x_axis, std::vector<double> phi0,
                                    int fit_order = 8);

// phi0 / phi1 / phi2 of the Taylor expansion of the surface about Y0:
//   phi1(X) = xi(X/Y0) - (X/Y0) xi'(X/Y0)
//   phi2(X) = X^2 xi''(X/Y0) / (2 Y0^3)
TaylorCoefficients taylor_coefficients(const PhaseErrorModel& model,
                                       const SpatialFrequencyGrid& grid);

// Residual-RCM profile from the APE alone: phi1 = (phi0 - X phi0') / Y0.
std::vector<double> rcm_from_ape(const ApeProfile& ape, double y0);

// Knowledge-aided surface from the APE alone: Phi(X, Y) = (Y/Y0) phi0(Y0 X / Y).
// The off-grid argument is evaluated through the polynomial fit; arguments
// beyond the fitted domain by more than 10% set the extrapolation flag.
// Rejects profiles whose constant/linear content exceeds the detrend gate.
PhaseErrorSurface surface_from_ape(const ApeProfile& ape, const SpatialFrequencyGrid& grid);

}  // namespace sarmt

#endif
