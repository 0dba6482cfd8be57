#include "sarmt/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sarmt {

namespace {

// Modified Bessel function of the first kind, order zero (power series;
// converges quickly for the argument range the Kaiser window uses).
double bessel_i0(double x) {
    double sum = 1.0, term = 1.0;
    const double q = 0.25 * x * x;
    for (int k = 1; k < 64; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    const double px = kPi * x;
    return std::sin(px) / px;
}

}  // namespace

SincInterpolator::SincInterpolator() : inv_i0_beta_(1.0 / bessel_i0(kKaiserBeta)) {}

double SincInterpolator::window(double u) const {
    const double t = 1.0 - u * u;
    if (t <= 0.0) return 0.0;
    return bessel_i0(kKaiserBeta * std::sqrt(t)) * inv_i0_beta_;
}

cdouble SincInterpolator::sample(std::span<const cdouble> src, double pos,
                                 ResampleStats& stats) const {
    const auto n = static_cast<long long>(src.size());
    ++stats.requested;
    if (!(pos >= 0.0 && pos <= static_cast<double>(n - 1))) {
        ++stats.zero_filled;
        return {0.0, 0.0};
    }
    const double r = std::round(pos);
    if (std::abs(pos - r) < 1e-9) return src[static_cast<std::size_t>(r)];

    const long long k0 = static_cast<long long>(std::floor(pos)) - (kHalfTaps - 1);
    cdouble acc{0.0, 0.0};
    for (long long k = k0; k < k0 + 2 * kHalfTaps; ++k) {
        if (k < 0 || k >= n) continue;
        const double d = pos - static_cast<double>(k);
        acc += src[static_cast<std::size_t>(k)] * (sinc(d) * window(d / kHalfTaps));
    }
    return acc;
}

void SincInterpolator::resample(std::span<const cdouble> src, std::span<const double> pos,
                                std::span<cdouble> out, ResampleStats& stats) const {
    if (pos.size() != out.size()) throw std::invalid_argument("resample: size mismatch");
    for (std::size_t i = 0; i < pos.size(); ++i) out[i] = sample(src, pos[i], stats);
}

double invert_monotone(std::span<const double> x, std::span<const double> y, double target) {
    const std::size_t n = y.size();
    if (n < 2 || x.size() != n) throw std::invalid_argument("invert_monotone: bad grids");
    const bool increasing = y[n - 1] > y[0];

    // bracketing index: y[lo] <= target < y[lo+1] (reversed when decreasing)
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        const bool left = increasing ? (y[mid] <= target) : (y[mid] >= target);
        (left ? lo : hi) = mid;
    }

    // 4-point Lagrange through the inverse samples (y_i, x_i), clamped at ends
    const long long start =
        std::clamp<long long>(static_cast<long long>(lo) - 1, 0, static_cast<long long>(n) - 4);
    double result = 0.0;
    for (long long i = start; i < start + 4; ++i) {
        double w = 1.0;
        for (long long j = start; j < start + 4; ++j) {
            if (j == i) continue;
            w *= (target - y[static_cast<std::size_t>(j)]) /
                 (y[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(j)]);
        }
        result += w * x[static_cast<std::size_t>(i)];
    }
    return result;
}

}  // namespace sarmt
