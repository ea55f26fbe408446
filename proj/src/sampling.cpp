#include "dirichlet/sampling.hpp"

#include "dirichlet/numeric.hpp"
#include "dirichlet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dirichlet::sampling {

namespace {
constexpr uint64_t kBlock = uint64_t(1) << 16;
} // namespace

RadialLaw RadialLaw::bergman_log(double alpha) {
    if (alpha <= 0.0) throw std::domain_error("bergman_log: alpha must be > 0");
    return {Kind::bergman_log, alpha};
}

RadialLaw RadialLaw::bergman_poly(double beta) {
    if (beta <= 0.0) throw std::domain_error("bergman_poly: beta must be > 0");
    return {Kind::bergman_poly, beta};
}

cplx sample_radial(const RadialLaw& law, rng::Stream& stream) {
    double radius = 1.0;
    switch (law.kind) {
        case RadialLaw::Kind::hardy_torus:
            break;
        case RadialLaw::Kind::bergman_log: {
            const double u = stream.gamma(law.param);
            radius = std::exp(-0.5 * u);
            break;
        }
        case RadialLaw::Kind::bergman_poly: {
            const double v = stream.beta_power(law.param);
            radius = std::sqrt(1.0 - v);
            break;
        }
    }
    const double theta = stream.angle();
    return cplx(radius * std::cos(theta), radius * std::sin(theta));
}

namespace {

// Exact event counting: identical results for any worker count.
uint64_t mc_count(uint64_t n, uint64_t seed,
                  const std::function<bool(uint64_t, rng::Stream&)>& event) {
    const uint64_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<uint64_t> block_hits(n_blocks, 0);
    par::for_chunks(n, kBlock, [&](uint64_t c, uint64_t begin, uint64_t end) {
        uint64_t hits = 0;
        for (uint64_t i = begin; i < end; ++i) {
            rng::Stream stream(seed, i);
            if (event(i, stream)) ++hits;
        }
        block_hits[c] = hits;
    });
    uint64_t total = 0;
    for (uint64_t h : block_hits) total += h;
    return total;
}

struct BlockMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

// Mean/variance accumulation in fixed blocks, merged in block order so the
// floating-point result is independent of the worker count.
BlockMoments mc_moments(uint64_t n, uint64_t seed,
                        const std::function<double(uint64_t, rng::Stream&)>& value) {
    const uint64_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<BlockMoments> blocks(n_blocks);
    par::for_chunks(n, kBlock, [&](uint64_t c, uint64_t begin, uint64_t end) {
        double s = 0.0, s2 = 0.0;
        for (uint64_t i = begin; i < end; ++i) {
            rng::Stream stream(seed, i);
            const double v = value(i, stream);
            s += v;
            s2 += v * v;
        }
        blocks[c] = {s, s2};
    });
    BlockMoments total;
    for (const auto& b : blocks) {
        total.sum += b.sum;
        total.sum_sq += b.sum_sq;
    }
    return total;
}

} // namespace

MeasureEstimate estimate_pushforward(const bohr::Symbol& phi, double beta,
                                     const CarlesonSquare& q, uint64_t n,
                                     uint64_t seed, bool force) {
    if (phi.c0 != 0)
        throw std::invalid_argument("estimate_pushforward: characteristic must be 0");
    if (!force && phi.status != bohr::SymbolStatus::g_verified)
        throw std::invalid_argument(
            "estimate_pushforward: symbol not G-verified (classify it first or force)");
    if (beta < 0.0) throw std::domain_error("estimate_pushforward: beta must be >= 0");
    if (n == 0) throw std::domain_error("estimate_pushforward: n must be >= 1");

    const bohr::CompiledPoly poly(bohr::bohr_lift(phi.phi0));
    const int d = poly.dimension();
    if (d > 8)
        throw std::invalid_argument("estimate_pushforward: dimension > 8 unsupported");
    const RadialLaw law =
        beta == 0.0 ? RadialLaw::hardy() : RadialLaw::bergman_poly(beta);

    const uint64_t hits = mc_count(n, seed, [&](uint64_t, rng::Stream& stream) {
        cplx z[8];
        for (int j = 0; j < d; ++j) z[j] = sample_radial(law, stream);
        return q.contains(poly.eval(std::span<const cplx>(z, (size_t)d)));
    });

    MeasureEstimate est;
    est.n_samples = n;
    est.seed = seed;
    est.mean = static_cast<double>(hits) / static_cast<double>(n);
    est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(n));
    return est;
}

ExponentFit fit_exponent(std::span<const std::pair<double, MeasureEstimate>> grid) {
    std::vector<double> lx, ly;
    ExponentFit fit;
    for (const auto& [eps, est] : grid) {
        if (est.mean > 0.0 && eps > 0.0) {
            lx.push_back(std::log(eps));
            ly.push_back(std::log(est.mean));
            fit.used.emplace_back(lx.back(), ly.back());
        } else {
            ++fit.excluded;
        }
    }
    if (lx.size() < 4)
        throw std::invalid_argument(
            "fit_exponent: fewer than 4 usable (nonzero) grid points");
    const auto line = numeric::fit_line(lx, ly);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    return fit;
}

namespace {

// Evaluation plan for |B f| on the polytorus. Each sample draws one angle per
// relevant prime (ascending); chi(n) = prod z_j^{kappa_j} is completely
// multiplicative, so dense supports use a smallest-prime-factor pass.
struct TorusEvalPlan {
    const dseries::DirichletCoeffs& f;
    std::vector<uint32_t> spf;     // smallest prime factor, dense path
    std::vector<uint32_t> var_of;  // var_of[p] = angle slot of prime p
    std::vector<uint64_t> primes;  // ascending relevant primes
    struct SparseTerm {
        cplx coeff;
        std::vector<std::pair<uint32_t, uint32_t>> powers;  // (slot, exponent)
    };
    std::vector<SparseTerm> support;
    bool dense = false;

    explicit TorusEvalPlan(const dseries::DirichletCoeffs& series) : f(series) {
        const uint64_t n_max = f.size();
        uint64_t n_support = 0;
        for (uint64_t n = 1; n <= n_max; ++n)
            if (f.at(n) != cplx(0.0)) ++n_support;
        dense = n_support * 4 >= n_max;
        if (dense) {
            spf.assign(n_max + 1, 0);
            for (uint64_t p = 2; p <= n_max; ++p)
                if (spf[p] == 0)
                    for (uint64_t m = p; m <= n_max; m += p)
                        if (spf[m] == 0) spf[m] = static_cast<uint32_t>(p);
            var_of.assign(n_max + 1, 0);
            for (uint64_t p = 2; p <= n_max; ++p)
                if (spf[p] == p) {
                    var_of[p] = static_cast<uint32_t>(primes.size());
                    primes.push_back(p);
                }
        } else {
            uint64_t max_prime = 0;
            for (uint64_t n = 1; n <= n_max; ++n)
                if (f.at(n) != cplx(0.0))
                    for (const auto& [p, k] : numth::factorize(n).factors)
                        max_prime = std::max(max_prime, p);
            var_of.assign(max_prime + 1, 0);
            primes = numth::primes_upto(max_prime);
            for (size_t j = 0; j < primes.size(); ++j)
                var_of[primes[j]] = static_cast<uint32_t>(j);
            for (uint64_t n = 1; n <= n_max; ++n) {
                const cplx a = f.at(n);
                if (a == cplx(0.0)) continue;
                SparseTerm term;
                term.coeff = a;
                for (const auto& [p, k] : numth::factorize(n).factors)
                    term.powers.emplace_back(var_of[p], k);
                support.push_back(std::move(term));
            }
        }
    }

    cplx eval(rng::Stream& stream, std::vector<cplx>& z, std::vector<cplx>& chi) const {
        z.resize(primes.size());
        for (size_t j = 0; j < primes.size(); ++j) {
            const double a = stream.angle();
            z[j] = cplx(std::cos(a), std::sin(a));
        }
        if (dense) {
            const uint64_t n_max = f.size();
            chi.resize(n_max + 1);
            chi[1] = 1.0;
            cplx sum = f.at(1);
            for (uint64_t n = 2; n <= n_max; ++n) {
                const uint32_t p = spf[n];
                chi[n] = (static_cast<uint64_t>(p) == n)
                             ? z[var_of[p]]
                             : chi[p] * chi[n / p];
                const cplx a = f.at(n);
                if (a != cplx(0.0)) sum += a * chi[n];
            }
            return sum;
        }
        cplx sum = 0.0;
        for (const auto& term : support) {
            cplx v = term.coeff;
            for (const auto& [slot, k] : term.powers) {
                const cplx zj = z[slot];
                cplx pw = zj;
                for (uint32_t i = 1; i < k; ++i) pw *= zj;
                v *= pw;
            }
            sum += v;
        }
        return sum;
    }
};

} // namespace

MeasureEstimate estimate_hp_norm(const dseries::DirichletCoeffs& f, double p,
                                 uint64_t n, uint64_t seed) {
    if (p < 1.0) throw std::domain_error("estimate_hp_norm: p must be >= 1");
    if (n == 0) throw std::domain_error("estimate_hp_norm: n must be >= 1");
    const TorusEvalPlan plan(f);

    const auto moments = mc_moments(n, seed, [&](uint64_t, rng::Stream& stream) {
        static thread_local std::vector<cplx> z_scratch, chi_scratch;
        return std::pow(std::abs(plan.eval(stream, z_scratch, chi_scratch)), p);
    });

    const double nn = static_cast<double>(n);
    const double mean_p = moments.sum / nn;
    const double var_p =
        std::max(0.0, (moments.sum_sq - nn * mean_p * mean_p) / std::max(1.0, nn - 1.0));
    const double se_p = std::sqrt(var_p / nn);

    MeasureEstimate est;
    est.n_samples = n;
    est.seed = seed;
    if (mean_p <= 0.0) {
        est.mean = 0.0;
        est.std_error = 0.0;
        return est;
    }
    est.mean = std::pow(mean_p, 1.0 / p);
    // delta method through x -> x^{1/p}
    est.std_error = std::pow(mean_p, 1.0 / p - 1.0) / p * se_p;
    return est;
}

double besicovitch_norm(const dseries::DirichletCoeffs& f, double p, double T,
                        uint64_t n_t) {
    if (T <= 0.0) throw std::domain_error("besicovitch_norm: T must be > 0");
    if (n_t < 2) throw std::domain_error("besicovitch_norm: need >= 2 nodes");
    const uint64_t n_max = f.size();

    std::vector<cplx> rot, cur;
    std::vector<cplx> coeffs;
    std::vector<double> logs;
    for (uint64_t n = 1; n <= n_max; ++n) {
        if (f.at(n) == cplx(0.0)) continue;
        coeffs.push_back(f.at(n));
        logs.push_back(std::log(static_cast<double>(n)));
    }
    const double dt = 2.0 * T / static_cast<double>(n_t);
    for (size_t i = 0; i < logs.size(); ++i) {
        rot.push_back(std::exp(cplx(0.0, -dt * logs[i])));
        cur.push_back(std::exp(cplx(0.0, T * logs[i])));  // e^{-i(-T) log n}
    }

    double sum = 0.0;
    for (uint64_t k = 0; k <= n_t; ++k) {
        cplx v = 0.0;
        for (size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * cur[i];
        double term = std::pow(std::abs(v), p);
        if (k == 0 || k == n_t) term *= 0.5;
        sum += term;
        for (size_t i = 0; i < cur.size(); ++i) cur[i] *= rot[i];
    }
    const double avg = sum * dt / (2.0 * T);
    return std::pow(avg, 1.0 / p);
}

double window_measure(double delta, double eps, double beta) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::domain_error("window_measure: need 0 < delta <= 1");
    if (!(eps > 0.0 && eps <= M_PI))
        throw std::domain_error("window_measure: need 0 < eps <= pi");
    if (beta <= 0.0) throw std::domain_error("window_measure: beta must be > 0");
    return eps / M_PI * std::pow(2.0 * delta - delta * delta, beta);
}

MeasureEstimate estimate_hyperbolic_disc(const ShiftedLinearSymbol& phi,
                                         const HyperbolicDisc& disc, uint64_t n,
                                         uint64_t seed) {
    if (phi.moduli.empty())
        throw std::invalid_argument("estimate_hyperbolic_disc: empty symbol");
    if (n == 0) throw std::domain_error("estimate_hyperbolic_disc: n must be >= 1");
    const cplx center = disc.center();
    const double radius = disc.radius();
    const size_t d = phi.moduli.size();

    const uint64_t hits = mc_count(n, seed, [&](uint64_t, rng::Stream& stream) {
        cplx w = 0.0;
        for (size_t j = 0; j < d; ++j) {
            const double a = stream.angle();
            w += phi.moduli[j] * (1.0 - cplx(std::cos(a), std::sin(a)));
        }
        return std::abs(w - center) <= radius;
    });

    MeasureEstimate est;
    est.n_samples = n;
    est.seed = seed;
    est.mean = static_cast<double>(hits) / static_cast<double>(n);
    est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(n));
    return est;
}

} // namespace dirichlet::sampling
