#include "sarmt/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sarmt {

double ScaledPolynomial::eval(double x) const {
    const double u = (x - shift) / scale;
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
    return acc;
}

double ScaledPolynomial::deriv(double x) const {
    const double u = (x - shift) / scale;
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;)
        acc = acc * u + static_cast<double>(k) * coeffs[k];
    return acc / scale;
}

double ScaledPolynomial::deriv2(double x) const {
    const double u = (x - shift) / scale;
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 2;)
        acc = acc * u + static_cast<double>(k) * static_cast<double>(k - 1) * coeffs[k];
    return acc / (scale * scale);
}

ScaledPolynomial fit_polynomial(std::span<const double> x, std::span<const double> y,
                                int order, int min_power) {
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double shift = 0.5 * (*lo_it + *hi_it);
    double scale = 0.5 * (*hi_it - *lo_it);
    if (scale <= 0.0) scale = 1.0;
    return fit_polynomial_fixed_scale(x, y, order, min_power, shift, scale);
}

ScaledPolynomial fit_polynomial_fixed_scale(std::span<const double> x,
                                            std::span<const double> y, int order,
                                            int min_power, double shift, double scale) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_polynomial: size mismatch");
    if (order < min_power) throw std::invalid_argument("fit_polynomial: order < min_power");
    if (!(scale > 0.0)) throw std::invalid_argument("fit_polynomial: scale must be positive");
    const auto n = static_cast<Eigen::Index>(x.size());
    const int nbasis = order - min_power + 1;
    if (n < nbasis) throw std::invalid_argument("fit_polynomial: underdetermined");

    ScaledPolynomial p;
    p.shift = shift;
    p.scale = scale;

    Eigen::MatrixXd a(n, nbasis);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double u = (x[i] - p.shift) / p.scale;
        double up = std::pow(u, min_power);
        for (int k = 0; k < nbasis; ++k) {
            a(i, k) = up;
            up *= u;
        }
        b(i) = y[i];
    }

    Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
    p.coeffs.assign(order + 1, 0.0);
    for (int k = 0; k < nbasis; ++k) p.coeffs[static_cast<std::size_t>(min_power + k)] = c(k);
    return p;
}

double fit_rms_residual(const ScaledPolynomial& p, std::span<const double> x,
                        std::span<const double> y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("fit_rms_residual: bad input");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = y[i] - p.eval(x[i]);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(x.size()));
}

}  // namespace sarmt
