#ifndef SARMT_INTERP_HPP
#define SARMT_INTERP_HPP

#include <span>
#include <vector>

#include "sarmt/types.hpp"

namespace sarmt {

// Tallies how many requested sample positions fell outside the recorded
// support and were zero-filled.
struct ResampleStats {
    std::size_t requested = 0;
    std::size_t zero_filled = 0;

    double zero_fraction() const {
        return requested == 0 ? 0.0 : static_cast<double>(zero_filled) / requested;
    }
    void merge(const ResampleStats& o) {
        requested += o.requested;
        zero_filled += o.zero_filled;
    }
};

// Band-limited resampler: 16-tap windowed sinc, Kaiser beta = 8. Positions
// outside [0, n-1] are zero-filled and counted; taps that fall off the ends
// read as zero. Positions within 1e-9 of an integer return that sample
// exactly.
class SincInterpolator {
public:
    static constexpr int kHalfTaps = 8;
    static constexpr double kKaiserBeta = 8.0;

    SincInterpolator();

    cdouble sample(std::span<const cdouble> src, double pos, ResampleStats& stats) const;

    // Resamples a whole line: out[i] = src(pos[i]).
    void resample(std::span<const cdouble> src, std::span<const double> pos,
                  std::span<cdouble> out, ResampleStats& stats) const;

private:
    double window(double u) const;  // Kaiser on |u| <= 1
    double inv_i0_beta_;
};

// Inverse of a strictly monotone sampled map y(x) on a uniform x grid:
// returns x with y(x) = target, by 4-point Lagrange interpolation of the
// inverse through the bracketing samples. Exact for affine y.
double invert_monotone(std::span<const double> x, std::span<const double> y, double target);

}  // namespace sarmt

#endif
