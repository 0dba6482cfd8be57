#include "sarmt/autofocus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sarmt/fft.hpp"
#include "sarmt/metrics.hpp"

namespace sarmt {

namespace {

void azimuth_to_data(std::vector<cdouble>& line) {
    fft::transform_1d(line.data(), line.size(), fft::Direction::Inverse);
}

void azimuth_to_image(std::vector<cdouble>& line) {
    fft::transform_1d(line.data(), line.size(), fft::Direction::Forward);
}

struct BinSelection {
    std::vector<std::size_t> bins;
};

BinSelection select_bins(const ComplexGrid& g, double min_contrast, std::size_t max_bins) {
    struct Scored {
        std::size_t bin;
        double peak;
    };
    std::vector<Scored> passed;
    const std::size_t m = g.rows();
    for (std::size_t c = 0; c < g.cols(); ++c) {
        double peak = 0.0, mean = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            const double a = std::abs(g.at(r, c));
            peak = std::max(peak, a);
            mean += a;
        }
        mean /= static_cast<double>(m);
        if (mean > 0.0 && peak / mean >= min_contrast) passed.push_back({c, peak});
    }
    std::sort(passed.begin(), passed.end(),
              [](const Scored& a, const Scored& b) { return a.peak > b.peak; });
    if (passed.size() > max_bins) passed.resize(max_bins);
    BinSelection sel;
    for (const auto& s : passed) sel.bins.push_back(s.bin);
    return sel;
}

}  // namespace

void detrend(std::vector<double>& values, const std::vector<double>& x_axis) {
    const std::size_t n = values.size();
    if (x_axis.size() != n || n == 0) throw std::invalid_argument("detrend: size mismatch");
    double sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x_axis[i];
        sxx += x_axis[i] * x_axis[i];
        sy += values[i];
        sxy += x_axis[i] * values[i];
    }
    const double nn = static_cast<double>(n);
    const double det = nn * sxx - sx * sx;
    const double c0 = (sxx * sy - sx * sxy) / det;
    const double c1 = (nn * sxy - sx * sy) / det;
    for (std::size_t i = 0; i < n; ++i) values[i] -= c0 + c1 * x_axis[i];
}

ApeEstimate detrend(const ApeEstimate& est) {
    ApeEstimate out = est;
    detrend(out.phi0_hat, out.x_axis);
    return out;
}

ComplexImage reduce_range_resolution(const ComplexImage& image, int factor) {
    const std::size_t ny = image.data.cols();
    if (factor < 1 || static_cast<std::size_t>(factor) > ny / 4)
        throw std::invalid_argument("reduce_range_resolution: factor out of range");
    const std::size_t ny2 = ny / static_cast<std::size_t>(factor);
    if (ny2 < 8)
        throw std::invalid_argument("reduce_range_resolution: fewer than 8 range cells left");

    ComplexGrid spec = image.data;
    fft::transform_2d(spec, fft::Direction::Inverse);

    // retain the central band around Y0
    const std::size_t c0 = center_index(ny);
    const std::size_t start = c0 - center_index(ny2);
    ComplexGrid cropped(spec.rows(), ny2);
    for (std::size_t r = 0; r < spec.rows(); ++r)
        for (std::size_t c = 0; c < ny2; ++c) cropped.at(r, c) = spec.at(r, start + c);
    fft::transform_2d(cropped, fft::Direction::Forward);

    ComplexImage out;
    out.data = std::move(cropped);
    out.grid = image.grid;
    out.grid.ny = ny2;
    out.grid.y_start = out.grid.y0 - out.grid.y_step * static_cast<double>(center_index(ny2));
    out.azimuth_pixel_spacing = image.azimuth_pixel_spacing;
    out.range_pixel_spacing =
        kTwoPi / (out.grid.y_step * static_cast<double>(ny2));
    out.provenance = image.provenance;
    out.provenance.push_back("reduce_range_resolution(" + std::to_string(factor) + ")");
    return out;
}

ApeEstimate pga_estimate(const ComplexImage& subimage, const PgaConfig& config) {
    const std::size_t m = subimage.data.rows();
    const std::size_t n = subimage.data.cols();
    if (m < 8) throw std::invalid_argument("pga_estimate: azimuth extent too small");

    ApeEstimate est;
    est.x_axis = subimage.grid.x_axis();
    est.phi0_hat.assign(m, 0.0);

    ComplexGrid work = subimage.data;
    const std::size_t cm = center_index(m);
    std::vector<cdouble> col(m), shifted(m);
    std::vector<cdouble> num(m);
    std::vector<double> phi(m);

    for (int iter = 1; iter <= config.max_iters; ++iter) {
        const auto sel = select_bins(work, config.min_contrast, config.max_bins);
        if (sel.bins.empty()) {
            if (iter == 1) {
                est.failed = true;
                est.diagnostics = "no range bin passed the contrast gate";
                return est;
            }
            break;
        }
        est.bins_used = sel.bins.size();

        const double frac =
            std::max(std::pow(config.window_shrink, iter - 1), config.window_floor);
        const auto w = std::max<std::size_t>(3, static_cast<std::size_t>(
                                                    std::lround(frac * static_cast<double>(m))));
        const long long lo = static_cast<long long>(cm) - static_cast<long long>(w) / 2;

        std::fill(num.begin(), num.end(), cdouble{0.0, 0.0});
        for (const auto bin : sel.bins) {
            for (std::size_t r = 0; r < m; ++r) col[r] = work.at(r, bin);
            // shift the brightest pixel to center
            std::size_t pk = 0;
            for (std::size_t r = 1; r < m; ++r)
                if (std::norm(col[r]) > std::norm(col[pk])) pk = r;
            for (std::size_t r = 0; r < m; ++r)
                shifted[r] = col[(r + pk + m - cm) % m];
            // window
            for (long long r = 0; r < static_cast<long long>(m); ++r)
                if (r < lo || r >= lo + static_cast<long long>(w))
                    shifted[static_cast<std::size_t>(r)] = cdouble{0.0, 0.0};
            azimuth_to_data(shifted);
            for (std::size_t k = 1; k < m; ++k)
                num[k] += std::conj(shifted[k - 1]) * shifted[k];
        }

        // ML gradient, integrate, detrend
        phi[0] = 0.0;
        for (std::size_t k = 1; k < m; ++k)
            phi[k] = phi[k - 1] + std::arg(num[k]);
        detrend(phi, est.x_axis);

        double rms = 0.0;
        for (const double v : phi) rms += v * v;
        rms = std::sqrt(rms / static_cast<double>(m));
        est.rms_history.push_back(rms);

        // apply the update to the working image and accumulate
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t r = 0; r < m; ++r) col[r] = work.at(r, c);
            azimuth_to_data(col);
            for (std::size_t r = 0; r < m; ++r)
                col[r] *= cdouble{std::cos(phi[r]), -std::sin(phi[r])};
            azimuth_to_image(col);
            for (std::size_t r = 0; r < m; ++r) work.at(r, c) = col[r];
        }
        for (std::size_t r = 0; r < m; ++r) est.phi0_hat[r] += phi[r];

        if (rms < config.rms_tol) break;
    }

    detrend(est.phi0_hat, est.x_axis);
    for (const double v : est.phi0_hat)
        if (!std::isfinite(v)) throw std::runtime_error("pga_estimate: non-finite estimate");
    return est;
}

namespace {

double legendre(int k, double u) {
    double pm1 = 1.0, p = u;
    if (k == 0) return 1.0;
    for (int i = 1; i < k; ++i) {
        const double pn = ((2.0 * i + 1.0) * u * p - i * pm1) / (i + 1.0);
        pm1 = p;
        p = pn;
    }
    return p;
}

// Entropy of the image reconstructed from X-domain columns with an extra
// phase correction exp(-j phi).
double corrected_entropy(const std::vector<std::vector<cdouble>>& xcols,
                         const std::vector<double>& phi) {
    const std::size_t m = phi.size();
    std::vector<cdouble> line(m);
    std::vector<double> intensity;
    intensity.reserve(xcols.size() * m);
    double total = 0.0;
    for (const auto& colx : xcols) {
        for (std::size_t r = 0; r < m; ++r)
            line[r] = colx[r] * cdouble{std::cos(phi[r]), -std::sin(phi[r])};
        azimuth_to_image(line);
        for (const auto& v : line) {
            const double p = std::norm(v);
            intensity.push_back(p);
            total += p;
        }
    }
    double h = 0.0;
    for (const double p : intensity)
        if (p > 0.0) h -= (p / total) * std::log(p / total);
    return h;
}

}  // namespace

ApeEstimate minentropy_estimate(const ComplexImage& subimage, int basis_order,
                                const MinEntropyConfig& config) {
    if (basis_order < 2) throw std::invalid_argument("minentropy_estimate: basis_order < 2");
    const std::size_t m = subimage.data.rows();
    const std::size_t n = subimage.data.cols();

    ApeEstimate est;
    est.x_axis = subimage.grid.x_axis();
    est.phi0_hat.assign(m, 0.0);

    // normalized azimuth coordinate for the Legendre basis
    const double x_scale = std::max(std::abs(est.x_axis.front()), std::abs(est.x_axis.back()));
    std::vector<std::vector<double>> basis;
    for (int k = 2; k <= basis_order; ++k) {
        std::vector<double> b(m);
        for (std::size_t r = 0; r < m; ++r) b[r] = legendre(k, est.x_axis[r] / x_scale);
        basis.push_back(std::move(b));
    }

    std::vector<std::vector<cdouble>> xcols(n, std::vector<cdouble>(m));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < m; ++r) xcols[c][r] = subimage.data.at(r, c);
        azimuth_to_data(xcols[c]);
    }

    std::vector<double> phi(m, 0.0), trial(m);
    const double e_start = corrected_entropy(xcols, phi);
    double e_current = e_start;

    auto entropy_with = [&](const std::vector<double>& base, const std::vector<double>& dir,
                            double c) {
        for (std::size_t r = 0; r < m; ++r) trial[r] = base[r] + c * dir[r];
        return corrected_entropy(xcols, trial);
    };

    double bracket = config.initial_range;
    for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
        const double e_sweep_start = e_current;
        for (const auto& dir : basis) {
            // coarse scan, then golden-section refinement around the best point
            constexpr int kScan = 25;
            double best_c = 0.0, best_e = e_current;
            for (int s = 0; s < kScan; ++s) {
                const double c =
                    -bracket + 2.0 * bracket * static_cast<double>(s) / (kScan - 1);
                const double e = entropy_with(phi, dir, c);
                if (e < best_e) {
                    best_e = e;
                    best_c = c;
                }
            }
            double lo = best_c - bracket / (kScan - 1) * 2.0;
            double hi = best_c + bracket / (kScan - 1) * 2.0;
            constexpr double kGolden = 0.6180339887498949;
            double c1 = hi - kGolden * (hi - lo);
            double c2 = lo + kGolden * (hi - lo);
            double e1 = entropy_with(phi, dir, c1);
            double e2 = entropy_with(phi, dir, c2);
            for (int it = 0; it < 30; ++it) {
                if (e1 < e2) {
                    hi = c2;
                    c2 = c1;
                    e2 = e1;
                    c1 = hi - kGolden * (hi - lo);
                    e1 = entropy_with(phi, dir, c1);
                } else {
                    lo = c1;
                    c1 = c2;
                    e1 = e2;
                    c2 = lo + kGolden * (hi - lo);
                    e2 = entropy_with(phi, dir, c2);
                }
            }
            const double c_opt = (e1 < e2) ? c1 : c2;
            const double e_opt = std::min(e1, e2);
            if (e_opt < e_current) {
                for (std::size_t r = 0; r < m; ++r) phi[r] += c_opt * dir[r];
                e_current = e_opt;
            }
        }
        est.rms_history.push_back(e_sweep_start - e_current);
        if (sweep >= config.min_sweeps &&
            e_sweep_start - e_current < config.min_improvement)
            break;
        bracket = std::max(0.5, bracket * config.sweep_shrink);
    }

    if (!(e_current < e_start)) {
        est.failed = true;
        est.diagnostics = "entropy did not improve from the starting image";
        est.phi0_hat.assign(m, 0.0);
        return est;
    }

    est.phi0_hat = phi;
    est.bins_used = n;
    detrend(est.phi0_hat, est.x_axis);
    return est;
}

}  // namespace sarmt
