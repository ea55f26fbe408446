#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace dirichlet::numeric {

using cplx = std::complex<double>;

// Riemann zeta by Euler-Maclaurin, valid for Re z > 1 with |Im z| up to a few
// hundred; near machine precision for the arguments used here.
cplx zeta_em(cplx z);
double zeta_em_real(double x);

// zeta(1 + x) for x > 0 by direct partial sum to n_terms plus the integral
// tail correction int_{N}^inf u^{-1-x} du = N^{-x}/x.
double zeta_one_plus_partial(double x, uint64_t n_terms = 10000000);

// Adaptive Simpson on [a, b] with absolute tolerance and depth cap.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 28);

// Least squares fit y = slope * x + intercept; returns (slope, intercept, r2).
struct LineFit {
    double slope = 0.0, intercept = 0.0, r_squared = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace dirichlet::numeric
