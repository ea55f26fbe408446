#pragma once

#include "dirichlet/dseries.hpp"
#include "dirichlet/numth.hpp"

#include <map>
#include <optional>
#include <string>

namespace dirichlet::bohr {

using dseries::cplx;

// Sparse polynomial in the prime-indexed variables z_1, z_2, ... (z_j for
// p_j); the image of a Dirichlet polynomial under the Bohr lift.
struct BohrPoly {
    std::map<numth::MultiIndex, cplx> terms;

    int dimension() const;  // largest prime index with a nonzero exponent
    int degree() const;     // max total degree |kappa|
};

BohrPoly bohr_lift(const dseries::DirichletCoeffs& f);

struct InverseBohrResult {
    dseries::DirichletCoeffs series;
    uint64_t dropped = 0;  // terms whose integer exceeds N
};
InverseBohrResult inverse_bohr(const BohrPoly& p, uint64_t n_max);

cplx eval_bohr(const BohrPoly& p, std::span<const cplx> z);

// Flattened form for tight evaluation loops (Monte Carlo sampling).
class CompiledPoly {
public:
    explicit CompiledPoly(const BohrPoly& p);
    int dimension() const { return dim_; }
    cplx eval(std::span<const cplx> z) const;

private:
    struct Term {
        cplx coeff;
        std::vector<std::pair<uint32_t, uint32_t>> powers;  // (variable, exponent)
    };
    int dim_ = 0;
    std::vector<Term> terms_;
};

struct TorusMin {
    double min_re = 0.0;
    std::vector<double> theta;  // argmin angles, one per variable
};

// Coarse grid over [-pi,pi)^d plus coordinate-descent refinement with a
// shrinking step. Deterministic: ties resolved toward lexicographically
// smaller theta. Throws for dimension > 4.
TorusMin min_re_on_torus(const BohrPoly& p, int grid, int refine_iters);

enum class SymbolStatus { unverified, g_verified, g_violated };

// Candidate Gordon-Hedenmalm symbol phi(s) = c0 s + phi0(s); only c0 = 0 is
// supported here. phi0.at(1) is the constant term c_1.
struct Symbol {
    int c0 = 0;
    dseries::DirichletCoeffs phi0 = dseries::DirichletCoeffs::unit();
    double tol = 1e-6;
    SymbolStatus status = SymbolStatus::unverified;
    std::optional<bool> unrestricted_range;
    double min_re = 0.0;
    std::vector<double> argmin_theta;
    std::string note;  // e.g. range decision at tolerance

    int dimension() const;
};

struct ClassifyOptions {
    int grid = 720;          // per dimension; capped internally for d >= 3
    int refine_iters = 40;
};

// Verifies the range condition Re(B phi0) >= 1/2 on the closed polydisc via
// its distinguished boundary. Sets status, unrestricted_range and the
// numerical certificate (min, argmin).
Symbol classify_symbol(Symbol sym, double tol, const ClassifyOptions& opts = {});

// psi(s) = T(2^{-s}) with T(z) = 1/2 + (1-z)/(1+z), truncated at N:
// a_1 = 3/2, a_{2^k} = 2(-1)^k.
Symbol transference_symbol(uint64_t n_max);

} // namespace dirichlet::bohr
