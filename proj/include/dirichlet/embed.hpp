#pragma once

#include "dirichlet/dseries.hpp"
#include "dirichlet/numth.hpp"
#include "dirichlet/sampling.hpp"

#include <complex>
#include <span>
#include <vector>

namespace dirichlet::embed {

using dseries::cplx;

struct WeisslerReport {
    double lhs = 0.0;     // (sum |a_k|^2 (p/2)^k)^{1/2}
    double rhs = 0.0;     // circle quadrature of the H^p(D) norm
    double margin = 0.0;  // rhs - lhs
};

// Hypercontractive contraction for one disc variable; f given by Taylor
// coefficients a_0..a_K.
WeisslerReport weissler_margin(std::span<const cplx> coeffs, double p,
                               int nodes = 1 << 14);

struct HelsonReport {
    double d1_norm = 0.0;
    sampling::MeasureEstimate h1;
    double margin_sigmas = 0.0;  // (h1 - d1) / stderr
};

HelsonReport helson_margin(const dseries::DirichletCoeffs& f, uint64_t n_mc,
                           uint64_t seed);

struct LocalEmbedReport {
    double lhs = 0.0;  // int_0^1 |f(1/2+it)|^2 dt
    double rhs = 0.0;  // squared H^2 norm
    double ratio = 0.0;
};

LocalEmbedReport local_embedding_p2(const dseries::DirichletCoeffs& f, uint64_t n_t);

// LHS of the Bergman embedding for 1 <= p < 2, evaluated exactly on the disc:
// the conformal substitution s = 1/2 + (1-w)/(1+w) collapses the |s+1/2|
// factors, leaving 2^{2-4/p} int_D |f(T(w))|^2 (1-|w|^2)^{2/p-2} dA(w).
double bergman_lhs(const dseries::DirichletCoeffs& f, double p, int n_radial = 256,
                   int n_angular = 512);

// Growth of ||f_eps||^2 in the conformally invariant Bergman norm restricted
// to [1/2,1] x [0,1], against the predicted exponent beta + 1 - 2/p.
sampling::ExponentFit optimality_probe(double p, double beta,
                                       std::span<const double> eps_grid);

struct DichotomyReport {
    double gamma_hat = 0.0;     // fitted exponent of dyadic increments
    double gamma_theory = 0.0;  // 2^alpha - 1 - beta
    double threshold = -1.25;   // convergent iff gamma_hat < threshold
    bool convergent = false;
    bool increments_positive = true;
    std::vector<numth::CheckpointSum> partials;
};

// Partial sums of sum d(n)^alpha / (n log^beta n) and the increment-decay
// exponent; the series converges iff 2^alpha < beta.
DichotomyReport convergence_dichotomy(double alpha, double beta,
                                      std::span<const uint64_t> x_grid);

// ||g_N||_{H^4}^4 = ||g_N^2||_{H^2}^2, exact over the N^2-supported square.
double h4_norm_of_g(uint64_t n_max, uint64_t n_cap = 8192);

struct RatioReport {
    double max_ratio = 0.0;
    size_t argmax = 0;
    std::vector<double> ratios;
};

// max |L(f)| / ||f||_{H^p} over the family; p = 2 uses the exact norm,
// otherwise Monte Carlo with the given budget.
RatioReport hilbert_ratio(double p, std::span<const dseries::DirichletCoeffs> family,
                          uint64_t mc_samples = 0, uint64_t seed = 0);

} // namespace dirichlet::embed
