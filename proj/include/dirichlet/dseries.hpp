#pragma once

#include "dirichlet/numth.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace dirichlet::dseries {

using cplx = std::complex<double>;

// Truncated Dirichlet series sum_{n<=N} a_n n^{-s}. Coefficients are indexed
// from n = 1; everything beyond N is implicitly zero.
class DirichletCoeffs {
public:
    explicit DirichletCoeffs(uint64_t n_max) : a_(n_max) {
        if (n_max == 0) throw std::domain_error("DirichletCoeffs: N must be >= 1");
    }

    static DirichletCoeffs unit(uint64_t n_max = 1) {  // a_1 = 1
        DirichletCoeffs f(n_max);
        f.a_[0] = 1.0;
        return f;
    }
    static DirichletCoeffs zeta_trunc(uint64_t n_max) {  // all ones
        DirichletCoeffs f(n_max);
        for (auto& c : f.a_) c = 1.0;
        return f;
    }
    static DirichletCoeffs monomial(uint64_t n, cplx c = 1.0, uint64_t n_max = 0) {
        DirichletCoeffs f(std::max(n, n_max));
        f.at(n) = c;
        return f;
    }

    uint64_t size() const { return a_.size(); }  // truncation bound N
    cplx& at(uint64_t n) { return a_.at(n - 1); }
    const cplx& at(uint64_t n) const { return a_.at(n - 1); }
    std::span<const cplx> coeffs() const { return a_; }
    std::span<cplx> coeffs() { return a_; }

private:
    std::vector<cplx> a_;
};

struct HalfPlanePoint {
    double sigma = 0.0;
    double t = 0.0;
};

struct EvalResult {
    cplx value;
    std::optional<double> tail_bound;  // only available for sigma > 1
};

// Dirichlet multiplication: (f*g)_n = sum_{km=n} f_k g_m, n <= n_out.
DirichletCoeffs convolve(const DirichletCoeffs& f, const DirichletCoeffs& g,
                         uint64_t n_out);

// Formal exponential of h with h_1 = 0:
//   g_1 = 1,  log(n) g_n = sum_{m|n, m>1} log(m) h_m g_{n/m}.
DirichletCoeffs exp_series(const DirichletCoeffs& h, uint64_t n_out);

// Formal logarithm of f with f_1 = 1 (inverse of exp_series).
DirichletCoeffs log_series(const DirichletCoeffs& f, uint64_t n_out);

// f^y for real y, f_1 = 1: exp_series(y * log_series(f)).
DirichletCoeffs pow_real(const DirichletCoeffs& f, double y, uint64_t n_out);

EvalResult evaluate(const DirichletCoeffs& f, HalfPlanePoint s);

enum class WeightMode { divide, multiply };

// (sum |a_n|^2 w(n)^{-1})^{1/2} for divide, w(n)^{+1} for multiply.
double weighted_norm(const DirichletCoeffs& f, const numth::MultiplicativeSpec& w,
                     WeightMode mode);

// Half-plane shift f(s + sigma0): a_n -> a_n n^{-sigma0}.
DirichletCoeffs translate(const DirichletCoeffs& f, double sigma0);

// zeta_alpha(s) = sum d(n)^alpha n^{-s}, truncated.
DirichletCoeffs zeta_alpha(double alpha, uint64_t n_max);

// phi_alpha = zeta_alpha * zeta^{-2^alpha}: the Euler-product remainder after
// the zeta power is removed. Coefficients vanish at squarefree n > 1.
DirichletCoeffs wilson_factor(double alpha, uint64_t n_max);

// g(s) = sum_{n>=2} n^{-1/2} (log n)^{-1} n^{-s}.
DirichletCoeffs hilbert_symbol_g(uint64_t n_max);

// L(f) = int_{1/2}^inf (f - a_1) ds = sum_{n>=2} a_n n^{-1/2}/log n.
cplx hilbert_functional(const DirichletCoeffs& f);

// f_eps = zeta(s + 1/2 + eps)^{2/p} / zeta(1 + 2 eps)^{1/p}, truncated.
DirichletCoeffs f_epsilon(double eps, double p, uint64_t n_max);

// zeta(1 + x), partial sum plus integral tail, cached across calls.
double zeta_one_plus(double x);

} // namespace dirichlet::dseries
