#include "dirichlet/embed.hpp"

#include "dirichlet/numeric.hpp"
#include "dirichlet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dirichlet::embed {

WeisslerReport weissler_margin(std::span<const cplx> coeffs, double p, int nodes) {
    if (p < 1.0 || p > 2.0)
        throw std::domain_error("weissler_margin: p must lie in [1,2]");
    WeisslerReport rep;
    double lhs2 = 0.0, w = 1.0;
    for (const cplx& a : coeffs) {
        lhs2 += std::norm(a) * w;
        w *= 0.5 * p;
    }
    rep.lhs = std::sqrt(lhs2);

    double sum = 0.0;
    const double dtheta = 2.0 * M_PI / nodes;
    for (int k = 0; k < nodes; ++k) {
        const double theta = -M_PI + dtheta * (k + 0.5);
        const cplx z(std::cos(theta), std::sin(theta));
        cplx v = 0.0;
        for (size_t j = coeffs.size(); j-- > 0;) v = v * z + coeffs[j];
        sum += std::pow(std::abs(v), p);
    }
    rep.rhs = std::pow(sum / nodes, 1.0 / p);
    rep.margin = rep.rhs - rep.lhs;
    return rep;
}

HelsonReport helson_margin(const dseries::DirichletCoeffs& f, uint64_t n_mc,
                           uint64_t seed) {
    HelsonReport rep;
    rep.d1_norm = dseries::weighted_norm(
        f, numth::MultiplicativeSpec::divisor_power(1.0), dseries::WeightMode::divide);
    rep.h1 = sampling::estimate_hp_norm(f, 1.0, n_mc, seed);
    const double diff = rep.h1.mean - rep.d1_norm;
    if (rep.h1.std_error > 0.0) {
        rep.margin_sigmas = diff / rep.h1.std_error;
    } else {
        // zero-variance estimate (constants): saturate rather than divide
        const double scale = std::max(1.0, std::abs(rep.d1_norm));
        rep.margin_sigmas =
            std::abs(diff) <= 1e-12 * scale ? 0.0 : (diff > 0 ? 1e6 : -1e6);
    }
    return rep;
}

LocalEmbedReport local_embedding_p2(const dseries::DirichletCoeffs& f, uint64_t n_t) {
    if (n_t < 2) throw std::domain_error("local_embedding_p2: need >= 2 nodes");
    LocalEmbedReport rep;
    const double dt = 1.0 / static_cast<double>(n_t);
    double sum = 0.0;
    for (uint64_t k = 0; k <= n_t; ++k) {
        const double t = dt * k;
        const auto v = dseries::evaluate(f, {0.5, t});
        double term = std::norm(v.value);
        if (k == 0 || k == n_t) term *= 0.5;
        sum += term;
    }
    rep.lhs = sum * dt;
    const double h2 = dseries::weighted_norm(
        f, numth::MultiplicativeSpec::divisor_power(0.0), dseries::WeightMode::divide);
    rep.rhs = h2 * h2;
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs
                              : (rep.lhs == 0.0 ? 0.0 : 1e308);
    return rep;
}

double bergman_lhs(const dseries::DirichletCoeffs& f, double p, int n_radial,
                   int n_angular) {
    if (p < 1.0 || p >= 2.0)
        throw std::domain_error("bergman_lhs: p must lie in [1,2)");
    const double beta = 2.0 / p - 1.0;

    std::vector<cplx> coeffs;
    std::vector<double> logs;
    for (uint64_t n = 1; n <= f.size(); ++n)
        if (f.at(n) != cplx(0.0)) {
            coeffs.push_back(f.at(n));
            logs.push_back(std::log(static_cast<double>(n)));
        }
    if (coeffs.empty()) return 0.0;

    // LHS^2 = 2^{2-4/p} * (1/(2 beta)) int_0^1 int_0^{2pi} |g|^2 dtheta du,
    // u = (1-r^2)^beta, midpoint in u, uniform offset grid in theta.
    std::vector<double> ring_mean(n_radial, 0.0);
    par::for_chunks(n_radial, 1, [&](uint64_t iu, uint64_t, uint64_t) {
        const double u = (static_cast<double>(iu) + 0.5) / n_radial;
        const double r = std::sqrt(1.0 - std::pow(u, 1.0 / beta));
        double acc = 0.0;
        for (int k = 0; k < n_angular; ++k) {
            const double theta = -M_PI + 2.0 * M_PI * (k + 0.5) / n_angular;
            const cplx w = r * cplx(std::cos(theta), std::sin(theta));
            const cplx s = 0.5 + (1.0 - w) / (1.0 + w);
            cplx g = 0.0;
            for (size_t i = 0; i < coeffs.size(); ++i)
                g += coeffs[i] * std::exp(-s * logs[i]);
            acc += std::norm(g);
        }
        ring_mean[iu] = acc / n_angular;
    });
    double integral = 0.0;
    for (int iu = 0; iu < n_radial; ++iu) integral += ring_mean[iu];
    integral *= 2.0 * M_PI / n_radial;  // dtheta du

    const double lhs2 = std::pow(2.0, 2.0 - 4.0 / p) / (2.0 * beta) * integral;
    return std::sqrt(lhs2);
}

namespace {

// Restricted-region conformally invariant Bergman mass of f_eps, evaluated
// through the zeta factorization on log-graded midpoint grids.
double probe_value(double eps, double p, double beta, int n_x = 220, int n_t = 220) {
    const double x_min = eps * 1e-9, x_max = 0.5;
    const double t_min = eps * 1e-9, t_max = 1.0;
    const double lx0 = std::log(x_min), lx1 = std::log(x_max);
    const double lt0 = std::log(t_min), lt1 = std::log(t_max);
    const double dlx = (lx1 - lx0) / n_x, dlt = (lt1 - lt0) / n_t;

    std::vector<double> col(n_x, 0.0);
    par::for_chunks(n_x, 1, [&](uint64_t ix, uint64_t, uint64_t) {
        const double lxm = lx0 + dlx * (ix + 0.5);
        const double x = std::exp(lxm);                 // sigma - 1/2
        const double wx = x * dlx;                      // dx in log coords
        double acc = 0.0;
        for (int it = 0; it < n_t; ++it) {
            const double ltm = lt0 + dlt * (it + 0.5);
            const double t = std::exp(ltm);
            const double wt = t * dlt;
            const cplx z(1.0 + x + eps, t);             // s + 1/2 + eps
            const double zeta_pow = std::pow(std::abs(numeric::zeta_em(z)), 4.0 / p);
            const double conf =
                std::pow(std::norm(cplx(1.0 + x, t)), -(beta + 1.0));  // |s+1/2|^{-2b-2}
            acc += zeta_pow * std::pow(x, beta - 1.0) * conf * wx * wt;
        }
        col[ix] = acc;
    });
    double integral = 0.0;
    for (double c : col) integral += c;

    const double z_den = std::pow(dseries::zeta_one_plus(2.0 * eps), 2.0 / p);
    return std::pow(4.0, beta) * beta * integral / z_den;
}

} // namespace

sampling::ExponentFit optimality_probe(double p, double beta,
                                       std::span<const double> eps_grid) {
    if (beta <= 0.0) throw std::domain_error("optimality_probe: beta must be > 0");
    if (p <= 1.0 || p >= 2.0)
        throw std::domain_error("optimality_probe: p must lie in (1,2)");
    if (eps_grid.size() < 2)
        throw std::invalid_argument("optimality_probe: need >= 2 grid points");

    std::vector<double> lx, ly;
    sampling::ExponentFit fit;
    for (double eps : eps_grid) {
        const double v = probe_value(eps, p, beta);
        lx.push_back(std::log(eps));
        ly.push_back(std::log(v));
        fit.used.emplace_back(lx.back(), ly.back());
    }
    const auto line = numeric::fit_line(lx, ly);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    return fit;
}

DichotomyReport convergence_dichotomy(double alpha, double beta,
                                      std::span<const uint64_t> x_grid) {
    if (x_grid.size() < 3)
        throw std::invalid_argument("convergence_dichotomy: need >= 3 checkpoints");
    for (size_t i = 0; i < x_grid.size(); ++i) {
        if (x_grid[i] < 2)
            throw std::invalid_argument("convergence_dichotomy: checkpoints start at 2");
        if (i > 0 && x_grid[i] <= x_grid[i - 1])
            throw std::invalid_argument("convergence_dichotomy: grid must increase");
    }
    DichotomyReport rep;
    rep.gamma_theory = std::pow(2.0, alpha) - 1.0 - beta;

    const uint64_t x_max = x_grid.back();
    const auto spec = numth::MultiplicativeSpec::divisor_power(alpha);
    size_t next = 0;
    double sum = 0.0, comp = 0.0;
    numth::sieve_stream(spec, x_max, [&](uint64_t first, std::span<const double> vals) {
        for (size_t i = 0; i < vals.size(); ++i) {
            const uint64_t n = first + i;
            if (n >= 2) {
                const double ln_n = std::log(static_cast<double>(n));
                const double term =
                    vals[i] / (static_cast<double>(n) * std::pow(ln_n, beta));
                double y = term - comp;
                double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
            while (next < x_grid.size() && x_grid[next] == n) {
                rep.partials.push_back({n, sum});
                ++next;
            }
        }
    });

    std::vector<double> lx, ly;
    for (size_t i = 1; i < rep.partials.size(); ++i) {
        const double inc = rep.partials[i].sum - rep.partials[i - 1].sum;
        if (inc <= 0.0) {
            rep.increments_positive = false;
            continue;
        }
        lx.push_back(std::log(std::log(static_cast<double>(rep.partials[i].x))));
        ly.push_back(std::log(inc));
    }
    if (lx.size() < 3)
        throw std::invalid_argument("convergence_dichotomy: too few usable increments");
    const auto line = numeric::fit_line(lx, ly);
    rep.gamma_hat = line.slope;
    rep.convergent = rep.gamma_hat < rep.threshold;
    return rep;
}

double h4_norm_of_g(uint64_t n_max, uint64_t n_cap) {
    if (n_max < 2) throw std::domain_error("h4_norm_of_g: N must be >= 2");
    if (n_max > n_cap)
        throw numth::resource_error(
            "h4_norm_of_g: N^2 coefficient buffer would need " +
                std::to_string(n_max * n_max * sizeof(double)) + " bytes",
            n_max * n_max * sizeof(double));
    const uint64_t m_max = n_max * n_max;
    std::vector<double> g(n_max + 1, 0.0);
    for (uint64_t n = 2; n <= n_max; ++n) {
        const double nn = static_cast<double>(n);
        g[n] = 1.0 / (std::sqrt(nn) * std::log(nn));
    }
    std::vector<double> sq(m_max + 1, 0.0);
    for (uint64_t k = 2; k <= n_max; ++k) {
        const double gk = g[k];
        for (uint64_t j = 2; j <= n_max; ++j) sq[k * j] += gk * g[j];
    }
    double sum = 0.0, comp = 0.0;
    for (uint64_t m = 4; m <= m_max; ++m) {
        const double term = sq[m] * sq[m];
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

RatioReport hilbert_ratio(double p, std::span<const dseries::DirichletCoeffs> family,
                          uint64_t mc_samples, uint64_t seed) {
    if (p <= 1.0) throw std::domain_error("hilbert_ratio: p must be > 1");
    RatioReport rep;
    rep.ratios.reserve(family.size());
    for (size_t i = 0; i < family.size(); ++i) {
        const auto& f = family[i];
        const double num = std::abs(dseries::hilbert_functional(f));
        double den;
        if (p == 2.0) {
            den = dseries::weighted_norm(
                f, numth::MultiplicativeSpec::divisor_power(0.0),
                dseries::WeightMode::divide);
        } else {
            if (mc_samples == 0)
                throw std::invalid_argument(
                    "hilbert_ratio: mc_samples required for p != 2");
            den = sampling::estimate_hp_norm(f, p, mc_samples, seed + i).mean;
        }
        const double r = den > 0.0 ? num / den : 0.0;
        rep.ratios.push_back(r);
        if (r > rep.max_ratio) {
            rep.max_ratio = r;
            rep.argmax = i;
        }
    }
    return rep;
}

} // namespace dirichlet::embed
