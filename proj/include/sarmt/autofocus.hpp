#ifndef SARMT_AUTOFOCUS_HPP
#define SARMT_AUTOFOCUS_HPP

#include <string>
#include <vector>

#include "sarmt/pfa.hpp"
#include "sarmt/types.hpp"

namespace sarmt {

struct ApeEstimate {
    std::vector<double> x_axis;       // rad/m
    std::vector<double> phi0_hat;     // rad, detrended
    std::vector<double> rms_history;  // rad, per-iteration update RMS
    std::size_t bins_used = 0;
    bool failed = false;
    std::string diagnostics;
};

// Structured phase-gradient autofocus configuration; the defaults are the
// pinned algorithm: full-extent window shrinking by 0.7 per iteration with a
// 5% floor, ML gradient kernel, stop below 0.1 rad update RMS or at 10
// iterations.
struct PgaConfig {
    int max_iters = 10;
    double rms_tol = 0.1;          // rad
    double window_shrink = 0.7;
    double window_floor = 0.05;    // fraction of azimuth extent
    double min_contrast = 5.0;     // peak/mean magnitude gate per range bin
    std::size_t max_bins = 32;
};

struct MinEntropyConfig {
    int basis_order = 6;           // polynomial orders 2..basis_order
    double initial_range = 30.0;   // rad, coefficient search bracket
    double sweep_shrink = 0.25;
    double min_improvement = 1e-4;
    int min_sweeps = 2;
    int max_sweeps = 8;
};

// Coarsens range resolution by `factor`: back to the (X, Y) domain, keep the
// central 1/factor of the Y band, transform back. Confines residual RCM so a
// 1-D azimuth autofocus is valid. Azimuth is untouched.
ComplexImage reduce_range_resolution(const ComplexImage& image, int factor);

// Phase gradient autofocus over the subimage's range bins.
ApeEstimate pga_estimate(const ComplexImage& subimage, const PgaConfig& config = {});

// Coordinate descent on polynomial APE coefficients minimizing image entropy.
ApeEstimate minentropy_estimate(const ComplexImage& subimage, int basis_order = 6,
                                const MinEntropyConfig& config = {});

// Least-squares removal of constant + linear content over the X axis.
void detrend(std::vector<double>& values, const std::vector<double>& x_axis);
ApeEstimate detrend(const ApeEstimate& est);

}  // namespace sarmt

#endif
