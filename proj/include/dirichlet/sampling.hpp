#pragma once

#include "dirichlet/bohr.hpp"
#include "dirichlet/dseries.hpp"
#include "dirichlet/rng.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dirichlet::sampling {

using dseries::cplx;

// Radial laws on the closed disc; the angle is always uniform on [-pi, pi).
//   hardy_torus:       point mass on |z| = 1
//   bergman_log(a):    m_a, radius e^{-u/2} with u ~ Gamma(a, 1)
//   bergman_poly(b):   m~_b, radius sqrt(1 - v) with v = U^{1/b}
struct RadialLaw {
    enum class Kind { hardy_torus, bergman_log, bergman_poly };
    Kind kind = Kind::hardy_torus;
    double param = 0.0;

    static RadialLaw hardy() { return {Kind::hardy_torus, 0.0}; }
    static RadialLaw bergman_log(double alpha);
    static RadialLaw bergman_poly(double beta);
};

cplx sample_radial(const RadialLaw& law, rng::Stream& stream);

// Q(tau, eps) = [1/2, 1/2+eps] x [tau - eps/2, tau + eps/2].
struct CarlesonSquare {
    double tau = 0.0;
    double eps = 0.0;
    bool contains(cplx s) const {
        return s.real() >= 0.5 && s.real() <= 0.5 + eps &&
               std::abs(s.imag() - tau) <= 0.5 * eps;
    }
};

// Hyperbolic disc B_H(s, r) in C_0: Euclidean disc of centre
// (sigma cosh r, t) and radius sigma sinh r.
struct HyperbolicDisc {
    double sigma = 1.0;
    double t = 0.0;
    double r = 0.5;
    cplx center() const { return {sigma * std::cosh(r), t}; }
    double radius() const { return sigma * std::sinh(r); }
};

struct MeasureEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    uint64_t n_samples = 0;
    uint64_t seed = 0;
};

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    size_t excluded = 0;                          // zero-estimate points dropped
    std::vector<std::pair<double, double>> used;  // (log eps, log mean)
};

// Pushforward mu_{beta,phi}(Q): fraction of product-law samples z in D^d (or
// T^d when beta = 0) with Phi(z) in Q. Binomial standard error; bit
// reproducible for fixed (seed, n) regardless of worker count.
MeasureEstimate estimate_pushforward(const bohr::Symbol& phi, double beta,
                                     const CarlesonSquare& q, uint64_t n,
                                     uint64_t seed, bool force = false);

// Least-squares slope of log(mean) against log(eps); zero estimates are
// excluded and counted. Throws std::invalid_argument below 4 usable points.
ExponentFit fit_exponent(std::span<const std::pair<double, MeasureEstimate>> grid);

// Monte Carlo H^p norm: (mean |Bf(z)|^p over Haar torus samples)^{1/p} with
// delta-method standard error.
MeasureEstimate estimate_hp_norm(const dseries::DirichletCoeffs& f, double p,
                                 uint64_t n, uint64_t seed);

// Trapezoid approximation of ((1/2T) int_{-T}^{T} |f(it)|^p dt)^{1/p}.
double besicovitch_norm(const dseries::DirichletCoeffs& f, double p, double T,
                        uint64_t n_t);

// Closed form m~_beta(S(delta, eps)) = (eps/pi) (2 delta - delta^2)^beta.
double window_measure(double delta, double eps, double beta);

// Linear symbol shifted to C_0: Phi~(z) = sum_j moduli[j] (1 - z_j).
struct ShiftedLinearSymbol {
    std::vector<double> moduli;
};

// Haar-torus estimate of mu~(B_H): fraction of samples with Phi~(z) in the
// Euclidean disc.
MeasureEstimate estimate_hyperbolic_disc(const ShiftedLinearSymbol& phi,
                                         const HyperbolicDisc& disc, uint64_t n,
                                         uint64_t seed);

} // namespace dirichlet::sampling
