#ifndef SARMT_POLYNOMIAL_HPP
#define SARMT_POLYNOMIAL_HPP

#include <span>
#include <vector>

#include "sarmt/types.hpp"

namespace sarmt {

// Polynomial in the scaled variable u = (x - shift) / scale, coefficient
// index = power of u. Scaling keeps the least-squares bases conditioned on
// physical axes (seconds, rad/m).
struct ScaledPolynomial {
    double shift = 0.0;
    double scale = 1.0;
    std::vector<double> coeffs;  // coeffs[k] multiplies u^k

    bool empty() const { return coeffs.empty(); }
    int order() const { return coeffs.empty() ? -1 : static_cast<int>(coeffs.size()) - 1; }

    double eval(double x) const;
    double deriv(double x) const;   // d/dx
    double deriv2(double x) const;  // d^2/dx^2

    double coeff(std::size_t power) const {
        return power < coeffs.size() ? coeffs[power] : 0.0;
    }
};

// Least-squares fit of y(x) with basis {u^min_power, ..., u^order},
// u = (x - shift)/scale. Scale/shift default to centering x on its midrange
// and normalizing to [-1, 1].
ScaledPolynomial fit_polynomial(std::span<const double> x, std::span<const double> y,
                                int order, int min_power = 0);

// Same, with the scaling fixed by the caller. min_power > 0 pins the low-order
// content to zero exactly (in the u variable).
ScaledPolynomial fit_polynomial_fixed_scale(std::span<const double> x,
                                            std::span<const double> y, int order,
                                            int min_power, double shift, double scale);

double fit_rms_residual(const ScaledPolynomial& p, std::span<const double> x,
                        std::span<const double> y);

}  // namespace sarmt

#endif
