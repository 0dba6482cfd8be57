#include "sarmt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sarmt/fft.hpp"

namespace sarmt {

double image_entropy(const ComplexGrid& g) {
    const double total = g.energy();
    if (!(total > 0.0)) throw std::invalid_argument("image_entropy: zero image");
    double h = 0.0;
    for (const auto& v : g.raw()) {
        const double p = std::norm(v) / total;
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

double image_contrast(const ComplexGrid& g) {
    if (g.size() == 0) throw std::invalid_argument("image_contrast: empty image");
    double mean = 0.0;
    for (const auto& v : g.raw()) mean += std::norm(v);
    mean /= static_cast<double>(g.size());
    if (!(mean > 0.0)) throw std::invalid_argument("image_contrast: zero image");
    double var = 0.0;
    for (const auto& v : g.raw()) {
        const double d = std::norm(v) - mean;
        var += d * d;
    }
    var /= static_cast<double>(g.size());
    return std::sqrt(var) / mean;
}

double azimuth_peak_width(const ComplexGrid& g) {
    // brightest pixel's range bin
    std::size_t pc = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < g.cols(); ++c)
            if (std::norm(g.at(r, c)) > best) {
                best = std::norm(g.at(r, c));
                pc = c;
            }
    if (!(best > 0.0)) throw std::invalid_argument("azimuth_peak_width: zero image");

    // azimuth cut through the peak, upsampled 16x by spectral zero padding
    const std::size_t n = g.rows();
    constexpr std::size_t kUp = 16;
    std::vector<cdouble> cut(n);
    for (std::size_t r = 0; r < n; ++r) cut[r] = g.at(r, pc);
    fft::transform_1d(cut.data(), n, fft::Direction::Inverse);
    std::vector<cdouble> padded(n * kUp, cdouble{0.0, 0.0});
    const std::size_t c_src = center_index(n);
    const std::size_t c_dst = center_index(n * kUp);
    for (std::size_t r = 0; r < n; ++r)
        padded[c_dst - c_src + r] = cut[r];
    fft::transform_1d(padded.data(), padded.size(), fft::Direction::Forward);

    std::vector<double> mag2(padded.size());
    std::size_t pk = 0;
    for (std::size_t i = 0; i < padded.size(); ++i) {
        mag2[i] = std::norm(padded[i]);
        if (mag2[i] > mag2[pk]) pk = i;
    }
    const double half = mag2[pk] / 2.0;

    // walk out to the half-power crossings, linear interpolation between bins
    auto crossing = [&](long long dir) {
        long long i = static_cast<long long>(pk);
        const auto sz = static_cast<long long>(mag2.size());
        while (i + dir >= 0 && i + dir < sz && mag2[static_cast<std::size_t>(i + dir)] >= half)
            i += dir;
        const long long j = i + dir;
        if (j < 0 || j >= sz) return static_cast<double>(i);
        const double a = mag2[static_cast<std::size_t>(i)];
        const double b = mag2[static_cast<std::size_t>(j)];
        const double frac = (a - half) / (a - b);
        return static_cast<double>(i) + static_cast<double>(dir) * frac;
    };
    const double width_up = crossing(+1) - crossing(-1);
    return width_up / static_cast<double>(kUp);
}

double subpixel_peak(const std::vector<double>& magnitude2) {
    if (magnitude2.empty()) throw std::invalid_argument("subpixel_peak: empty");
    std::size_t pk = 0;
    for (std::size_t i = 1; i < magnitude2.size(); ++i)
        if (magnitude2[i] > magnitude2[pk]) pk = i;
    if (pk == 0 || pk + 1 == magnitude2.size()) return static_cast<double>(pk);
    const double ym = magnitude2[pk - 1], y0 = magnitude2[pk], yp = magnitude2[pk + 1];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom == 0.0) return static_cast<double>(pk);
    return static_cast<double>(pk) + 0.5 * (ym - yp) / denom;
}

std::vector<double> median5(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> out(n);
    std::vector<double> w;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = (i >= 2) ? i - 2 : 0;
        const std::size_t hi = std::min(n - 1, i + 2);
        w.assign(v.begin() + lo, v.begin() + hi + 1);
        std::nth_element(w.begin(), w.begin() + w.size() / 2, w.end());
        out[i] = w[w.size() / 2];
    }
    return out;
}

}  // namespace sarmt
