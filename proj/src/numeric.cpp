#include "dirichlet/numeric.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dirichlet::numeric {

namespace {
// B_2, B_4, ..., B_14
constexpr double kBernoulli[] = {1.0 / 6,   -1.0 / 30,   1.0 / 42,    -1.0 / 30,
                                 5.0 / 66,  -691.0 / 2730, 7.0 / 6};
constexpr int kZetaTerms = 64;
} // namespace

cplx zeta_em(cplx z) {
    const double M = kZetaTerms;
    cplx sum = 0.0;
    for (int n = 1; n < kZetaTerms; ++n)
        sum += std::exp(-z * std::log(static_cast<double>(n)));
    const double logM = std::log(M);
    sum += 0.5 * std::exp(-z * logM);
    sum += std::exp((1.0 - z) * logM) / (z - 1.0);
    // correction sum_k B_{2k}/(2k)! * M^{-z-2k+1} * prod_{i=0}^{2k-2} (z+i)
    cplx poch = z;
    double fact = 2.0;  // (2k)! running
    for (int k = 1; k <= 7; ++k) {
        sum += kBernoulli[k - 1] / fact * poch * std::exp(-(z + (2.0 * k - 1.0)) * logM);
        poch *= (z + (2.0 * k - 1.0)) * (z + (2.0 * k));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
}

double zeta_em_real(double x) { return zeta_em(cplx(x, 0.0)).real(); }

double zeta_one_plus_partial(double x, uint64_t n_terms) {
    if (x <= 0.0) throw std::domain_error("zeta_one_plus_partial: x must be > 0");
    const double e = 1.0 + x;
    double sum = 0.0, comp = 0.0;
    for (uint64_t n = n_terms; n >= 1; --n) {  // ascending magnitude
        double term = std::pow(static_cast<double>(n), -e);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // integral tail: int_N^inf u^{-1-x} du = N^{-x}/x
    sum += std::pow(static_cast<double>(n_terms), -x) / x;
    return sum;
}

namespace {
double simpson_rule(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole,
                     double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_rule(a, fa, m, fm, flm);
    const double right = simpson_rule(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson_rule(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (size_t i = 0; i < x.size(); ++i) {
        const double pred = fit.slope * x[i] + fit.intercept;
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

} // namespace dirichlet::numeric
