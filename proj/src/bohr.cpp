#include "dirichlet/bohr.hpp"

#include "dirichlet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dirichlet::bohr {

int BohrPoly::dimension() const {
    size_t d = 0;
    for (const auto& [idx, c] : terms) {
        if (c == cplx(0.0) || idx.factors.empty()) continue;
        d = std::max(d, numth::prime_index(idx.factors.back().first));
    }
    return static_cast<int>(d);
}

int BohrPoly::degree() const {
    uint32_t deg = 0;
    for (const auto& [idx, c] : terms)
        if (c != cplx(0.0)) deg = std::max(deg, idx.omega());
    return static_cast<int>(deg);
}

BohrPoly bohr_lift(const dseries::DirichletCoeffs& f) {
    BohrPoly p;
    for (uint64_t n = 1; n <= f.size(); ++n) {
        const cplx a = f.at(n);
        if (a == cplx(0.0)) continue;
        p.terms[numth::factorize(n)] += a;
    }
    return p;
}

InverseBohrResult inverse_bohr(const BohrPoly& p, uint64_t n_max) {
    InverseBohrResult out{dseries::DirichletCoeffs(n_max), 0};
    for (const auto& [idx, c] : p.terms) {
        auto n = idx.value_if_le(n_max);
        if (n)
            out.series.at(*n) += c;
        else
            ++out.dropped;
    }
    return out;
}

cplx eval_bohr(const BohrPoly& p, std::span<const cplx> z) {
    const int d = p.dimension();
    if (static_cast<int>(z.size()) < d)
        throw std::invalid_argument("eval_bohr: need at least dim(P) coordinates");
    cplx sum = 0.0;
    for (const auto& [idx, c] : p.terms) {
        cplx term = c;
        for (const auto& [prime, k] : idx.factors) {
            const cplx zj = z[numth::prime_index(prime) - 1];
            for (uint32_t i = 0; i < k; ++i) term *= zj;
        }
        sum += term;
    }
    return sum;
}

CompiledPoly::CompiledPoly(const BohrPoly& p) {
    dim_ = p.dimension();
    for (const auto& [idx, c] : p.terms) {
        if (c == cplx(0.0)) continue;
        Term t;
        t.coeff = c;
        for (const auto& [prime, k] : idx.factors)
            t.powers.emplace_back(static_cast<uint32_t>(numth::prime_index(prime) - 1), k);
        terms_.push_back(std::move(t));
    }
}

cplx CompiledPoly::eval(std::span<const cplx> z) const {
    cplx sum = 0.0;
    for (const auto& t : terms_) {
        cplx term = t.coeff;
        for (const auto& [var, k] : t.powers) {
            const cplx zj = z[var];
            cplx pw = zj;
            for (uint32_t i = 1; i < k; ++i) pw *= zj;
            term *= pw;
        }
        sum += term;
    }
    return sum;
}

namespace {

double re_on_torus(const CompiledPoly& cp, std::span<const double> theta,
                   std::vector<cplx>& z) {
    for (size_t j = 0; j < theta.size(); ++j)
        z[j] = cplx(std::cos(theta[j]), std::sin(theta[j]));
    return cp.eval(z).real();
}

} // namespace

TorusMin min_re_on_torus(const BohrPoly& p, int grid, int refine_iters) {
    const int d = p.dimension();
    if (d > 4)
        throw std::invalid_argument(
            "min_re_on_torus: dimension > 4 unsupported by grid search; "
            "use a Monte Carlo sweep instead");
    CompiledPoly cp(p);
    if (d == 0) {
        cplx c = 0.0;
        for (const auto& [idx, coeff] : p.terms) c += coeff;
        return {c.real(), {}};
    }
    if (grid < 2) grid = 2;

    const double two_pi = 2.0 * M_PI;
    const double step0 = two_pi / grid;

    // grid search, parallel over the first coordinate
    const uint64_t total = static_cast<uint64_t>(grid);
    std::vector<double> chunk_min(total, 0.0);
    std::vector<std::vector<double>> chunk_arg(total);
    par::for_chunks(total, 1, [&](uint64_t c, uint64_t i0, uint64_t) {
        std::vector<double> theta(d, 0.0);
        std::vector<uint64_t> iv(d, 0);
        std::vector<cplx> z(d);
        iv[0] = i0;
        double best = 0.0;
        std::vector<double> best_theta;
        bool first = true;
        // iterate remaining coordinates odometer-style
        for (;;) {
            for (int j = 0; j < d; ++j) theta[j] = -M_PI + step0 * iv[j];
            const double v = re_on_torus(cp, theta, z);
            if (first || v < best) {
                best = v;
                best_theta = theta;
                first = false;
            }
            int j = d - 1;
            for (; j >= 1; --j) {
                if (++iv[j] < static_cast<uint64_t>(grid)) break;
                iv[j] = 0;
            }
            if (j < 1) break;
        }
        chunk_min[c] = best;
        chunk_arg[c] = std::move(best_theta);
    });
    double best = chunk_min[0];
    std::vector<double> best_theta = chunk_arg[0];
    for (uint64_t c = 1; c < total; ++c)
        if (chunk_min[c] < best) {
            best = chunk_min[c];
            best_theta = chunk_arg[c];
        }

    // coordinate descent with shrinking step
    std::vector<cplx> z(d);
    double step = step0;
    std::vector<double> theta = best_theta;
    for (int it = 0; it < refine_iters; ++it) {
        for (int j = 0; j < d; ++j) {
            for (double sgn : {-1.0, 1.0}) {
                std::vector<double> cand = theta;
                cand[j] += sgn * step;
                const double v = re_on_torus(cp, cand, z);
                if (v < best) {
                    best = v;
                    theta = cand;
                }
            }
        }
        step *= 0.6;
    }
    // wrap angles into [-pi, pi)
    for (double& a : theta) {
        a = std::fmod(a + M_PI, two_pi);
        if (a < 0) a += two_pi;
        a -= M_PI;
    }
    return {best, theta};
}

int Symbol::dimension() const { return bohr_lift(phi0).dimension(); }

Symbol classify_symbol(Symbol sym, double tol, const ClassifyOptions& opts) {
    if (sym.c0 != 0)
        throw std::invalid_argument(
            "classify_symbol: only characteristic 0 is supported");
    const BohrPoly lift = bohr_lift(sym.phi0);
    const int d = lift.dimension();
    int grid = opts.grid;
    if (d == 3) grid = std::min(grid, 180);
    if (d == 4) grid = std::min(grid, 60);

    const TorusMin tm = min_re_on_torus(lift, grid, opts.refine_iters);
    sym.tol = tol;
    sym.min_re = tm.min_re;
    sym.argmin_theta = tm.theta;
    sym.note.clear();
    if (tm.min_re >= 0.5 - tol) {
        sym.status = SymbolStatus::g_verified;
        sym.unrestricted_range = (tm.min_re <= 0.5 + tol);
        if (std::abs(tm.min_re - 0.5) <= tol)
            sym.note = "range decision at tolerance: |min Re - 1/2| <= tol; "
                       "numerical certificate, not a proof";
    } else {
        sym.status = SymbolStatus::g_violated;
        sym.unrestricted_range = std::nullopt;
    }
    return sym;
}

Symbol transference_symbol(uint64_t n_max) {
    if (n_max < 2)
        throw std::domain_error("transference_symbol: N must be >= 2");
    Symbol sym;
    sym.phi0 = dseries::DirichletCoeffs(n_max);
    sym.phi0.at(1) = 1.5;
    double sign = -1.0;
    for (uint64_t m = 2; m <= n_max; m *= 2) {
        sym.phi0.at(m) = 2.0 * sign;
        sign = -sign;
    }
    return sym;
}

} // namespace dirichlet::bohr
