#include "dirichlet/dseries.hpp"

#include "dirichlet/numeric.hpp"
#include "dirichlet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dirichlet::dseries {

DirichletCoeffs convolve(const DirichletCoeffs& f, const DirichletCoeffs& g,
                         uint64_t n_out) {
    DirichletCoeffs h(n_out);
    const uint64_t kf = std::min(f.size(), n_out);
    for (uint64_t k = 1; k <= kf; ++k) {
        const cplx fk = f.at(k);
        if (fk == cplx(0.0)) continue;
        const uint64_t mg = std::min(g.size(), n_out / k);
        for (uint64_t m = 1; m <= mg; ++m) h.at(k * m) += fk * g.at(m);
    }
    return h;
}

DirichletCoeffs exp_series(const DirichletCoeffs& h, uint64_t n_out) {
    if (h.at(1) != cplx(0.0))
        throw std::domain_error("exp_series: h_1 must be 0");
    DirichletCoeffs g(n_out);
    std::vector<cplx> acc(n_out + 1, cplx(0.0));  // acc[n] = sum log(m) h_m g_{n/m}
    std::vector<double> logs(n_out + 1, 0.0);
    for (uint64_t n = 2; n <= n_out; ++n) logs[n] = std::log(static_cast<double>(n));

    g.at(1) = 1.0;
    const uint64_t hm_max = h.size();
    for (uint64_t j = 1; j <= n_out; ++j) {
        if (j > 1) g.at(j) = acc[j] / logs[j];
        const cplx gj = g.at(j);
        if (gj == cplx(0.0)) continue;
        const uint64_t m_hi = std::min(hm_max, n_out / j);
        for (uint64_t m = 2; m <= m_hi; ++m) {
            const cplx hm = h.at(m);
            if (hm != cplx(0.0)) acc[m * j] += logs[m] * hm * gj;
        }
    }
    return g;
}

DirichletCoeffs log_series(const DirichletCoeffs& f, uint64_t n_out) {
    if (f.at(1) != cplx(1.0))
        throw std::domain_error("log_series: f_1 must be 1");
    DirichletCoeffs h(n_out);
    std::vector<cplx> acc(n_out + 1, cplx(0.0));  // acc[n] = sum_{1<m<n} log(m) h_m f_{n/m}
    std::vector<double> logs(n_out + 1, 0.0);
    for (uint64_t n = 2; n <= n_out; ++n) logs[n] = std::log(static_cast<double>(n));

    const uint64_t f_max = f.size();
    for (uint64_t m = 2; m <= n_out; ++m) {
        const cplx fm = m <= f_max ? f.at(m) : cplx(0.0);
        h.at(m) = fm - acc[m] / logs[m];
        const cplx hm = h.at(m);
        if (hm == cplx(0.0)) continue;
        const cplx w = logs[m] * hm;
        const uint64_t j_hi = std::min(f_max, n_out / m);
        for (uint64_t j = 2; j <= j_hi; ++j) {
            const cplx fj = f.at(j);
            if (fj != cplx(0.0)) acc[m * j] += w * fj;
        }
    }
    return h;
}

DirichletCoeffs pow_real(const DirichletCoeffs& f, double y, uint64_t n_out) {
    DirichletCoeffs h = log_series(f, n_out);
    for (uint64_t n = 2; n <= n_out; ++n) h.at(n) *= y;
    return exp_series(h, n_out);
}

EvalResult evaluate(const DirichletCoeffs& f, HalfPlanePoint s) {
    const uint64_t n_max = f.size();
    const cplx z(s.sigma, s.t);
    cplx sum = 0.0;
    double max_abs = 0.0;
    for (uint64_t n = 1; n <= n_max; ++n) {
        const cplx a = f.at(n);
        if (a == cplx(0.0)) continue;
        max_abs = std::max(max_abs, std::abs(a));
        sum += (n == 1) ? a : a * std::exp(-z * std::log(static_cast<double>(n)));
    }
    EvalResult r{sum, std::nullopt};
    if (s.sigma > 1.0)
        r.tail_bound = max_abs *
                       std::pow(static_cast<double>(n_max), 1.0 - s.sigma) /
                       (s.sigma - 1.0);
    return r;
}

double weighted_norm(const DirichletCoeffs& f, const numth::MultiplicativeSpec& w,
                     WeightMode mode) {
    const uint64_t n_max = f.size();
    const auto table = numth::mult_table(w, n_max);
    double sum = 0.0, comp = 0.0;
    for (uint64_t n = 1; n <= n_max; ++n) {
        const cplx a = f.at(n);
        if (a == cplx(0.0)) continue;
        const double wn = table[n];
        if (!(wn > 0.0))
            throw std::domain_error("weighted_norm: weight must be positive");
        const double term = std::norm(a) * (mode == WeightMode::divide ? 1.0 / wn : wn);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return std::sqrt(sum);
}

DirichletCoeffs translate(const DirichletCoeffs& f, double sigma0) {
    DirichletCoeffs g(f.size());
    for (uint64_t n = 1; n <= f.size(); ++n)
        g.at(n) = f.at(n) * std::pow(static_cast<double>(n), -sigma0);
    return g;
}

DirichletCoeffs zeta_alpha(double alpha, uint64_t n_max) {
    DirichletCoeffs f(n_max);
    const auto d = numth::mult_table(numth::MultiplicativeSpec::divisor_power(alpha), n_max);
    for (uint64_t n = 1; n <= n_max; ++n) f.at(n) = d[n];
    return f;
}

DirichletCoeffs wilson_factor(double alpha, uint64_t n_max) {
    const auto za = zeta_alpha(alpha, n_max);
    const auto zneg = pow_real(DirichletCoeffs::zeta_trunc(n_max),
                               -std::pow(2.0, alpha), n_max);
    return convolve(za, zneg, n_max);
}

DirichletCoeffs hilbert_symbol_g(uint64_t n_max) {
    if (n_max < 2) throw std::domain_error("hilbert_symbol_g: N must be >= 2");
    DirichletCoeffs g(n_max);
    for (uint64_t n = 2; n <= n_max; ++n) {
        const double nn = static_cast<double>(n);
        g.at(n) = 1.0 / (std::sqrt(nn) * std::log(nn));
    }
    return g;
}

cplx hilbert_functional(const DirichletCoeffs& f) {
    cplx sum = 0.0;
    for (uint64_t n = 2; n <= f.size(); ++n) {
        const cplx a = f.at(n);
        if (a == cplx(0.0)) continue;
        const double nn = static_cast<double>(n);
        sum += a / (std::sqrt(nn) * std::log(nn));
    }
    return sum;
}

double zeta_one_plus(double x) {
    if (x <= 0.0) throw std::domain_error("zeta_one_plus: x must be > 0");
    static std::mutex mtx;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(x);
        if (it != cache.end()) return it->second;
    }
    const double v = numeric::zeta_one_plus_partial(x);
    std::lock_guard<std::mutex> lock(mtx);
    cache[x] = v;
    return v;
}

DirichletCoeffs f_epsilon(double eps, double p, uint64_t n_max) {
    if (eps <= 0.0) throw std::domain_error("f_epsilon: eps must be > 0");
    if (p < 1.0 || p > 2.0)
        throw std::domain_error("f_epsilon: p must lie in [1,2]");
    const double z_norm = std::pow(zeta_one_plus(2.0 * eps), 1.0 / p);
    const auto dy =
        numth::mult_table(numth::MultiplicativeSpec::generalized_divisor(2.0 / p), n_max);
    DirichletCoeffs f(n_max);
    for (uint64_t n = 1; n <= n_max; ++n)
        f.at(n) = dy[n] * std::pow(static_cast<double>(n), -0.5 - eps) / z_norm;
    return f;
}

} // namespace dirichlet::dseries
