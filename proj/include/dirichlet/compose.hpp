#pragma once

#include "dirichlet/bohr.hpp"
#include "dirichlet/dseries.hpp"

#include <iosfwd>
#include <vector>

namespace dirichlet::compose {

using dseries::cplx;

// C_phi f = f o phi for characteristic-zero symbols, computed termwise via
//   n^{-phi(s)} = n^{-c_1} exp(-log n * sum_{m>=2} c_m m^{-s}).
// tail_bound(sigma) bounds the evaluation error at Re s = sigma caused by the
// truncation of each exponential series to n_out: coefficientwise,
// |exp(-log n * tail)|_m <= exp(|log n| * |tail|)_m, and the dropped mass of
// the dominating series has the closed-form total n^{T(sigma)}.
class CompositionResult {
public:
    dseries::DirichletCoeffs coeffs;

    double tail_bound(double sigma) const;

    CompositionResult(dseries::DirichletCoeffs c, std::vector<std::pair<double, double>> src,
                      std::vector<std::pair<uint64_t, double>> abs_tail, double re_c1,
                      uint64_t n_out)
        : coeffs(std::move(c)), sources_(std::move(src)), abs_tail_(std::move(abs_tail)),
          re_c1_(re_c1), n_out_(n_out) {}

private:
    std::vector<std::pair<double, double>> sources_;  // (|a_n|, log n), n >= 2
    std::vector<std::pair<uint64_t, double>> abs_tail_;  // (m, |c_m|), m >= 2
    double re_c1_ = 0.0;
    uint64_t n_out_ = 1;
};

CompositionResult compose_coeffs(const dseries::DirichletCoeffs& f,
                                 const bohr::Symbol& phi, uint64_t n_out,
                                 bool force = false);

// Finite section of C_phi: D_alpha -> D_beta in the normalized monomial
// bases: M[m,n] = (C_phi n^{-s})_m * d(n)^{alpha/2} * d(m)^{-beta/2}.
// Columns are stored sparse.
struct TruncatedOperator {
    uint64_t n_in = 0, n_out = 0;
    double alpha = 0.0, beta = 0.0;
    std::vector<std::vector<std::pair<uint32_t, cplx>>> cols;  // (row m, value)

    void write_csv(std::ostream& os) const;     // dense row-major, re/im pairs
    void write_binary(std::ostream& os) const;  // documented header + doubles
};

TruncatedOperator operator_matrix(const bohr::Symbol& phi, double alpha, double beta,
                                  uint64_t n_in, uint64_t n_out, bool force = false);

// Power iteration on T*T from a fixed seeded start; sqrt of the top
// eigenvalue, a lower bound for the operator norm on the truncated domain.
double estimate_operator_norm(const TruncatedOperator& op, int iters = 200);

} // namespace dirichlet::compose
