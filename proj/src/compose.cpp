#include "dirichlet/compose.hpp"

#include "dirichlet/numth.hpp"
#include "dirichlet/parallel.hpp"
#include "dirichlet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dirichlet::compose {

namespace {

void require_usable(const bohr::Symbol& phi, bool force, const char* who) {
    if (phi.c0 != 0)
        throw std::invalid_argument(std::string(who) +
                                    ": characteristic >= 1 unsupported");
    if (!force && phi.status != bohr::SymbolStatus::g_verified)
        throw std::invalid_argument(
            std::string(who) +
            ": symbol is not G-verified; classify it first or pass force");
}

// -log n * tail as a series with unit index 0, ready for exp_series.
dseries::DirichletCoeffs scaled_tail(const bohr::Symbol& phi, double log_n_signed,
                                     uint64_t n_out, bool absolute) {
    dseries::DirichletCoeffs h(std::max<uint64_t>(std::min(phi.phi0.size(), n_out), 1));
    for (uint64_t m = 2; m <= h.size(); ++m) {
        const cplx c = phi.phi0.at(m);
        h.at(m) = absolute ? cplx(std::abs(c) * log_n_signed, 0.0) : -log_n_signed * c;
    }
    return h;
}

} // namespace

double CompositionResult::tail_bound(double sigma) const {
    // T(sigma) = sum |c_m| m^{-sigma}
    double t_sigma = 0.0;
    for (const auto& [m, cm] : abs_tail_)
        t_sigma += cm * std::pow(static_cast<double>(m), -sigma);
    double bound = 0.0;
    double magnitude = 0.0;  // scale of the evaluated sum, for roundoff
    for (const auto& [abs_an, log_n] : sources_) {
        // dominating series exp(|log n| |tail|): total mass at sigma is
        // n^{T(sigma)}; subtract the retained part
        dseries::DirichletCoeffs habs(n_out_);
        for (const auto& [m, cm] : abs_tail_)
            if (m <= n_out_) habs.at(m) = cm * log_n;
        const auto dom = dseries::exp_series(habs, n_out_);
        double retained = 0.0;
        for (uint64_t m = 1; m <= n_out_; ++m)
            retained += dom.at(m).real() * std::pow(static_cast<double>(m), -sigma);
        const double total = std::exp(log_n * t_sigma);
        bound += abs_an * std::exp(-re_c1_ * log_n) * std::max(0.0, total - retained);
        magnitude += abs_an * std::exp(-re_c1_ * log_n) * total;
    }
    // evaluation roundoff: the truncation bound alone can sit below machine
    // noise once n_out is generous
    const double n_terms = static_cast<double>(n_out_ + sources_.size() + 1);
    return bound + 16.0 * std::numeric_limits<double>::epsilon() * n_terms * magnitude;
}

CompositionResult compose_coeffs(const dseries::DirichletCoeffs& f,
                                 const bohr::Symbol& phi, uint64_t n_out,
                                 bool force) {
    require_usable(phi, force, "compose_coeffs");
    const cplx c1 = phi.phi0.at(1);

    std::vector<std::pair<uint64_t, cplx>> support;
    for (uint64_t n = 1; n <= f.size(); ++n)
        if (f.at(n) != cplx(0.0)) support.emplace_back(n, f.at(n));

    dseries::DirichletCoeffs out(n_out);
    std::vector<std::pair<double, double>> sources;

    // per-chunk partial sums, merged in chunk order
    const uint64_t chunk = 8;
    const uint64_t n_chunks = (support.size() + chunk - 1) / chunk;
    std::vector<dseries::DirichletCoeffs> partial(n_chunks, dseries::DirichletCoeffs(n_out));
    par::for_chunks(support.size(), chunk, [&](uint64_t c, uint64_t b, uint64_t e) {
        for (uint64_t i = b; i < e; ++i) {
            const auto& [n, a_n] = support[i];
            if (n == 1) {
                partial[c].at(1) += a_n;
                continue;
            }
            const double log_n = std::log(static_cast<double>(n));
            const auto h = scaled_tail(phi, log_n, n_out, false);
            const auto en = dseries::exp_series(h, n_out);
            const cplx scale = a_n * std::exp(-c1 * log_n);
            for (uint64_t m = 1; m <= n_out; ++m) partial[c].at(m) += scale * en.at(m);
        }
    });
    for (uint64_t c = 0; c < n_chunks; ++c)
        for (uint64_t m = 1; m <= n_out; ++m) out.at(m) += partial[c].at(m);

    for (const auto& [n, a_n] : support)
        if (n > 1) sources.emplace_back(std::abs(a_n), std::log(static_cast<double>(n)));

    std::vector<std::pair<uint64_t, double>> abs_tail;
    for (uint64_t m = 2; m <= phi.phi0.size(); ++m)
        if (phi.phi0.at(m) != cplx(0.0))
            abs_tail.emplace_back(m, std::abs(phi.phi0.at(m)));

    return CompositionResult(std::move(out), std::move(sources), std::move(abs_tail),
                             c1.real(), n_out);
}

TruncatedOperator operator_matrix(const bohr::Symbol& phi, double alpha, double beta,
                                  uint64_t n_in, uint64_t n_out, bool force) {
    require_usable(phi, force, "operator_matrix");
    const cplx c1 = phi.phi0.at(1);

    const auto d_table = numth::mult_table(numth::MultiplicativeSpec::divisor_power(1.0),
                                           std::max(n_in, n_out));
    TruncatedOperator op;
    op.n_in = n_in;
    op.n_out = n_out;
    op.alpha = alpha;
    op.beta = beta;
    op.cols.resize(n_in);

    std::vector<double> row_scale(n_out + 1);
    for (uint64_t m = 1; m <= n_out; ++m)
        row_scale[m] = std::pow(d_table[m], -0.5 * beta);

    par::for_chunks(n_in, 16, [&](uint64_t, uint64_t b, uint64_t e) {
        for (uint64_t i = b; i < e; ++i) {
            const uint64_t n = i + 1;
            auto& col = op.cols[i];
            const double col_scale = std::pow(d_table[n], 0.5 * alpha);
            if (n == 1) {
                col.emplace_back(1, cplx(col_scale * row_scale[1], 0.0));
                continue;
            }
            const double log_n = std::log(static_cast<double>(n));
            const auto h = scaled_tail(phi, log_n, n_out, false);
            const auto en = dseries::exp_series(h, n_out);
            const cplx scale = std::exp(-c1 * log_n) * col_scale;
            for (uint64_t m = 1; m <= n_out; ++m) {
                const cplx v = scale * en.at(m) * row_scale[m];
                if (v != cplx(0.0)) col.emplace_back(static_cast<uint32_t>(m), v);
            }
        }
    });
    return op;
}

double estimate_operator_norm(const TruncatedOperator& op, int iters) {
    if (iters < 1) throw std::domain_error("estimate_operator_norm: iters >= 1");
    const uint64_t n = op.n_in;
    std::vector<cplx> v(n);
    for (uint64_t j = 0; j < n; ++j) {
        rng::Stream s(42, j);
        v[j] = cplx(s.uniform() - 0.5, 0.0);
    }
    auto norm2 = [](const std::vector<cplx>& x) {
        double s = 0.0;
        for (const cplx& c : x) s += std::norm(c);
        return std::sqrt(s);
    };
    double nv = norm2(v);
    for (auto& c : v) c /= nv;

    std::vector<cplx> w(op.n_out + 1);
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::fill(w.begin(), w.end(), cplx(0.0));
        for (uint64_t j = 0; j < n; ++j) {
            const cplx vj = v[j];
            if (vj == cplx(0.0)) continue;
            for (const auto& [m, val] : op.cols[j]) w[m] += val * vj;
        }
        std::vector<cplx> u(n);
        for (uint64_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (const auto& [m, val] : op.cols[j]) s += std::conj(val) * w[m];
            u[j] = s;
        }
        lambda = norm2(u);
        if (lambda == 0.0) return 0.0;
        for (uint64_t j = 0; j < n; ++j) v[j] = u[j] / lambda;
    }
    return std::sqrt(lambda);
}

void TruncatedOperator::write_csv(std::ostream& os) const {
    os << "# truncated composition operator section\n";
    os << "# rows=" << n_out << " cols=" << n_in << " alpha=" << alpha
       << " beta=" << beta << "\n";
    os << "# row-major dense; per row: re,im,re,im,... (" << n_in << " pairs)\n";
    std::vector<cplx> row(n_in);
    for (uint64_t m = 1; m <= n_out; ++m) {
        std::fill(row.begin(), row.end(), cplx(0.0));
        for (uint64_t j = 0; j < n_in; ++j)
            for (const auto& [r, val] : cols[j])
                if (r == m) row[j] = val;
        for (uint64_t j = 0; j < n_in; ++j) {
            if (j) os << ',';
            os << row[j].real() << ',' << row[j].imag();
        }
        os << '\n';
    }
}

void TruncatedOperator::write_binary(std::ostream& os) const {
    // header: magic "DOP1", u64 rows, u64 cols, f64 alpha, f64 beta;
    // payload: row-major interleaved re,im doubles.
    os.write("DOP1", 4);
    auto put_u64 = [&](uint64_t x) { os.write(reinterpret_cast<const char*>(&x), 8); };
    auto put_f64 = [&](double x) { os.write(reinterpret_cast<const char*>(&x), 8); };
    put_u64(n_out);
    put_u64(n_in);
    put_f64(alpha);
    put_f64(beta);
    std::vector<cplx> row(n_in);
    for (uint64_t m = 1; m <= n_out; ++m) {
        std::fill(row.begin(), row.end(), cplx(0.0));
        for (uint64_t j = 0; j < n_in; ++j)
            for (const auto& [r, val] : cols[j])
                if (r == m) row[j] = val;
        for (uint64_t j = 0; j < n_in; ++j) {
            put_f64(row[j].real());
            put_f64(row[j].imag());
        }
    }
}

} // namespace dirichlet::compose
