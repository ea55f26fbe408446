#include "dirichlet/dseries.hpp"

#include "dirichlet/numeric.hpp"
#include "dirichlet/numth.hpp"
#include "dirichlet/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace dirichlet;
using dseries::cplx;
using dseries::DirichletCoeffs;

namespace {

DirichletCoeffs random_series(uint64_t n_max, uint64_t seed, bool unit_lead = false) {
    rng::Stream s(seed, 0);
    DirichletCoeffs f(n_max);
    for (uint64_t n = 1; n <= n_max; ++n)
        f.at(n) = cplx(s.normal(), s.normal()) * 0.5;
    if (unit_lead) f.at(1) = 1.0;
    return f;
}

double max_coeff_diff(const DirichletCoeffs& a, const DirichletCoeffs& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (uint64_t n = 1; n <= a.size(); ++n)
        m = std::max(m, std::abs(a.at(n) - b.at(n)));
    return m;
}

} // namespace

TEST_CASE("convolve basics") {
    const uint64_t N = 256;
    SUBCASE("zeta * zeta gives divisor counts") {
        const auto z = DirichletCoeffs::zeta_trunc(N);
        const auto zz = dseries::convolve(z, z, N);
        const auto d = numth::mult_table(numth::MultiplicativeSpec::divisor_power(1.0), N);
        for (uint64_t n = 1; n <= N; ++n)
            CHECK(zz.at(n).real() == doctest::Approx(d[n]));
    }
    SUBCASE("unit is a two-sided identity") {
        const auto f = random_series(N, 11);
        const auto e = DirichletCoeffs::unit(N);
        CHECK(max_coeff_diff(dseries::convolve(f, e, N), f) == 0.0);
        CHECK(max_coeff_diff(dseries::convolve(e, f, N), f) == 0.0);
    }
    SUBCASE("2^-s times 3^-s is 6^-s") {
        const auto f = DirichletCoeffs::monomial(2);
        const auto g = DirichletCoeffs::monomial(3);
        const auto h = dseries::convolve(f, g, 8);
        for (uint64_t n = 1; n <= 8; ++n)
            CHECK(std::abs(h.at(n) - (n == 6 ? cplx(1.0) : cplx(0.0))) == 0.0);
    }
    SUBCASE("commutative and associative on random inputs") {
        const auto f = random_series(200, 1);
        const auto g = random_series(150, 2);
        const auto h = random_series(100, 3);
        CHECK(max_coeff_diff(dseries::convolve(f, g, 512), dseries::convolve(g, f, 512)) <
              1e-12);
        const auto l = dseries::convolve(dseries::convolve(f, g, 512), h, 512);
        const auto r = dseries::convolve(f, dseries::convolve(g, h, 512), 512);
        CHECK(max_coeff_diff(l, r) < 1e-12);
    }
}

TEST_CASE("exp_series") {
    SUBCASE("exp(0) = 1") {
        const auto g = dseries::exp_series(DirichletCoeffs(16), 16);
        CHECK(g.at(1) == cplx(1.0));
        for (uint64_t n = 2; n <= 16; ++n) CHECK(std::abs(g.at(n)) == 0.0);
    }
    SUBCASE("one prime variable gives c^k/k! at 2^k") {
        const cplx c(0.7, -0.3);
        auto h = DirichletCoeffs(1024);
        h.at(2) = c;
        const auto g = dseries::exp_series(h, 1024);
        cplx expect = 1.0;
        for (uint32_t k = 0; (uint64_t(1) << k) <= 1024; ++k) {
            if (k > 0) expect *= c / static_cast<double>(k);
            CHECK(std::abs(g.at(uint64_t(1) << k) - expect) < 1e-12);
        }
        // off the powers of 2 everything vanishes
        CHECK(std::abs(g.at(3)) == 0.0);
        CHECK(std::abs(g.at(12)) == 0.0);
    }
    SUBCASE("exp(h) exp(-h) = 1") {
        auto h = random_series(128, 5);
        h.at(1) = 0.0;
        auto hneg = h;
        for (uint64_t n = 1; n <= 128; ++n) hneg.at(n) = -hneg.at(n);
        const auto prod =
            dseries::convolve(dseries::exp_series(h, 128), dseries::exp_series(hneg, 128), 128);
        CHECK(max_coeff_diff(prod, DirichletCoeffs::unit(128)) < 1e-12);
    }
    SUBCASE("h_1 must vanish") {
        auto h = DirichletCoeffs(4);
        h.at(1) = 1.0;
        CHECK_THROWS_AS(dseries::exp_series(h, 4), std::domain_error);
    }
}

TEST_CASE("log/exp round trip") {
    auto f = random_series(256, 9, /*unit_lead=*/true);
    const auto h = dseries::log_series(f, 256);
    CHECK(std::abs(h.at(1)) == 0.0);
    const auto back = dseries::exp_series(h, 256);
    CHECK(max_coeff_diff(back, f) < 1e-10);
}

TEST_CASE("pow_real") {
    const uint64_t N = 512;
    const auto z = DirichletCoeffs::zeta_trunc(N);
    SUBCASE("y = 1 returns f") {
        const auto f = random_series(N, 21, true);
        CHECK(max_coeff_diff(dseries::pow_real(f, 1.0, N), f) < 1e-12);
    }
    SUBCASE("zeta^2 has divisor coefficients") {
        const auto g = dseries::pow_real(z, 2.0, N);
        const auto d = numth::mult_table(numth::MultiplicativeSpec::divisor_power(1.0), N);
        for (uint64_t n = 1; n <= N; ++n)
            CHECK(g.at(n).real() == doctest::Approx(d[n]).epsilon(1e-12));
    }
    SUBCASE("zeta^{1/2} at 4 is binom(3/2,2) = 3/8") {
        const auto g = dseries::pow_real(z, 0.5, 8);
        CHECK(g.at(4).real() == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
    }
    SUBCASE("coefficients equal d_y for several y") {
        const uint64_t M = 10000;
        const auto zz = DirichletCoeffs::zeta_trunc(M);
        for (double y : {-2.0, -1.0, -0.5, 0.5, 1.5}) {
            const auto g = dseries::pow_real(zz, y, M);
            const auto dy = numth::mult_table(
                numth::MultiplicativeSpec::generalized_divisor(y), M);
            double worst = 0.0;
            for (uint64_t n = 1; n <= M; ++n)
                worst = std::max(worst, std::abs(g.at(n).real() - dy[n]));
            CHECK(worst < 1e-10);
        }
    }
    SUBCASE("f_1 must be 1") {
        auto f = DirichletCoeffs(4);
        f.at(1) = 2.0;
        CHECK_THROWS_AS(dseries::pow_real(f, 0.5, 4), std::domain_error);
    }
}

TEST_CASE("evaluate") {
    SUBCASE("zeta truncation at s = 2 approaches pi^2/6") {
        const uint64_t N = 1000000;
        const auto z = DirichletCoeffs::zeta_trunc(N);
        const auto r = dseries::evaluate(z, {2.0, 0.0});
        REQUIRE(r.tail_bound.has_value());
        const double pi2_6 = M_PI * M_PI / 6.0;
        CHECK(std::abs(r.value.real() - pi2_6) <= *r.tail_bound);
        CHECK(*r.tail_bound <= 1.01e-6);
        // high-precision partial-sum oracle at the same truncation
        double oracle = 0.0;
        for (uint64_t n = N; n >= 1; --n)
            oracle += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
        CHECK(r.value.real() == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(std::abs(r.value.imag()) < 1e-12);
    }
    SUBCASE("2^-s at s = 1") {
        const auto f = DirichletCoeffs::monomial(2);
        CHECK(dseries::evaluate(f, {1.0, 0.0}).value.real() == doctest::Approx(0.5));
    }
    SUBCASE("constants evaluate to a_1 with no tail for sigma <= 1") {
        auto f = DirichletCoeffs::unit(4);
        f.at(1) = cplx(2.5, -1.0);
        const auto r = dseries::evaluate(f, {0.3, 17.0});
        CHECK(std::abs(r.value - cplx(2.5, -1.0)) < 1e-15);
        CHECK_FALSE(dseries::evaluate(f, {0.9, 0.0}).tail_bound.has_value());
    }
}

TEST_CASE("weighted_norm") {
    using numth::MultiplicativeSpec;
    SUBCASE("2^-s in D_1") {
        const auto f = DirichletCoeffs::monomial(2);
        CHECK(dseries::weighted_norm(f, MultiplicativeSpec::divisor_power(1.0),
                                     dseries::WeightMode::divide) ==
              doctest::Approx(std::pow(2.0, -0.5)));
    }
    SUBCASE("constants have norm |a_1| for every weight") {
        auto f = DirichletCoeffs::unit(1);
        f.at(1) = cplx(3.0, 4.0);
        for (double a : {0.0, 0.5, 2.0})
            CHECK(dseries::weighted_norm(f, MultiplicativeSpec::divisor_power(a),
                                         dseries::WeightMode::divide) ==
                  doctest::Approx(5.0));
    }
    SUBCASE("1 + 2^-s + 3^-s in D_1 is sqrt(2)") {
        auto f = DirichletCoeffs(3);
        f.at(1) = f.at(2) = f.at(3) = 1.0;
        CHECK(dseries::weighted_norm(f, MultiplicativeSpec::divisor_power(1.0),
                                     dseries::WeightMode::divide) ==
              doctest::Approx(std::sqrt(2.0)));
    }
    SUBCASE("nonincreasing in alpha") {
        const auto f = random_series(100, 31);
        double prev = 1e308;
        for (double a : {0.0, 0.3, 0.8, 1.5, 2.0}) {
            const double v = dseries::weighted_norm(
                f, MultiplicativeSpec::divisor_power(a), dseries::WeightMode::divide);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
    SUBCASE("nonpositive weight rejected") {
        const auto f = random_series(8, 33);
        CHECK_THROWS_AS(dseries::weighted_norm(f, MultiplicativeSpec::omega_power(-1.0),
                                               dseries::WeightMode::divide),
                        std::domain_error);
    }
}

TEST_CASE("translate") {
    const auto f = random_series(64, 41);
    SUBCASE("sigma0 = 0 is the identity") {
        CHECK(max_coeff_diff(dseries::translate(f, 0.0), f) == 0.0);
    }
    SUBCASE("monomial example") {
        const auto g = dseries::translate(DirichletCoeffs::monomial(2), 1.0);
        CHECK(g.at(2).real() == doctest::Approx(0.5));
    }
    SUBCASE("translation adds") {
        const auto a = dseries::translate(dseries::translate(f, 0.4), 0.35);
        const auto b = dseries::translate(f, 0.75);
        CHECK(max_coeff_diff(a, b) < 1e-12);
    }
}

TEST_CASE("zeta_alpha and wilson_factor") {
    SUBCASE("alpha = 0 is the zeta truncation") {
        const auto z = dseries::zeta_alpha(0.0, 64);
        for (uint64_t n = 1; n <= 64; ++n)
            CHECK(z.at(n).real() == doctest::Approx(1.0));
    }
    SUBCASE("alpha = 1 at n = 4") {
        CHECK(dseries::zeta_alpha(1.0, 8).at(4).real() == doctest::Approx(3.0));
    }
    SUBCASE("alpha = 1 equals zeta^2") {
        const auto a = dseries::zeta_alpha(1.0, 128);
        const auto b = dseries::pow_real(DirichletCoeffs::zeta_trunc(128), 2.0, 128);
        CHECK(max_coeff_diff(a, b) < 1e-10);
    }
    SUBCASE("wilson factor is trivial at alpha = 0 and 1") {
        for (double a : {0.0, 1.0}) {
            const auto w = dseries::wilson_factor(a, 128);
            CHECK(max_coeff_diff(w, DirichletCoeffs::unit(128)) < 1e-10);
        }
    }
    SUBCASE("wilson factor vanishes on squarefree n > 1") {
        for (double a : {0.5, 0.7, 1.3}) {
            const auto w = dseries::wilson_factor(a, 1024);
            CHECK(w.at(1).real() == doctest::Approx(1.0));
            for (uint64_t n = 2; n <= 1024; ++n) {
                const auto idx = numth::factorize(n);
                bool squarefree = true;
                for (const auto& [p, k] : idx.factors)
                    if (k > 1) squarefree = false;
                if (squarefree) CHECK(std::abs(w.at(n)) < 1e-10);
            }
        }
    }
}

TEST_CASE("hilbert symbol and functional") {
    SUBCASE("g coefficients") {
        const auto g = dseries::hilbert_symbol_g(16);
        CHECK(std::abs(g.at(1)) == 0.0);
        CHECK(g.at(2).real() ==
              doctest::Approx(1.0 / (std::sqrt(2.0) * std::log(2.0))));
    }
    SUBCASE("norm grows in N and converges") {
        using numth::MultiplicativeSpec;
        const auto h2 = MultiplicativeSpec::divisor_power(0.0);
        double prev = 0.0;
        std::vector<double> steps;
        for (uint64_t n : {100ull, 1000ull, 10000ull, 100000ull}) {
            const double v = dseries::weighted_norm(dseries::hilbert_symbol_g(n), h2,
                                                    dseries::WeightMode::divide);
            CHECK(v > prev);
            steps.push_back(v - prev);
            prev = v;
        }
        // decade tail integral of 1/(n log^2 n) over [1e4, 1e5] is about 0.022
        // in the squared norm; the norm steps shrink decade over decade
        CHECK(steps.back() < steps[steps.size() - 2]);
        CHECK(steps.back() < 0.03);
    }
    SUBCASE("L on constants and monomials") {
        auto c = DirichletCoeffs::unit(4);
        c.at(1) = cplx(3.0, 1.0);
        CHECK(std::abs(dseries::hilbert_functional(c)) == 0.0);
        const auto f = DirichletCoeffs::monomial(2);
        CHECK(dseries::hilbert_functional(f).real() ==
              doctest::Approx(1.0 / (std::sqrt(2.0) * std::log(2.0))));
    }
    SUBCASE("L agrees with adaptive quadrature for random polynomials") {
        for (uint64_t seed : {1ull, 2ull, 3ull}) {
            const auto f = random_series(100, 1000 + seed);
            const cplx a1 = f.at(1);
            // oracle: numerically integrate f(sigma) - a_1 on [1/2, 40] and add
            // the exact per-term tail beyond 40
            auto real_part = [&](double sigma) {
                return (dseries::evaluate(f, {sigma, 0.0}).value - a1).real();
            };
            auto imag_part = [&](double sigma) {
                return (dseries::evaluate(f, {sigma, 0.0}).value - a1).imag();
            };
            const double re =
                numeric::adaptive_simpson(real_part, 0.5, 40.0, 1e-11);
            const double im =
                numeric::adaptive_simpson(imag_part, 0.5, 40.0, 1e-11);
            cplx tail = 0.0;
            for (uint64_t n = 2; n <= f.size(); ++n)
                tail += f.at(n) * std::pow(static_cast<double>(n), -40.0) /
                        std::log(static_cast<double>(n));
            const cplx oracle = cplx(re, im) + tail;
            CHECK(std::abs(dseries::hilbert_functional(f) - oracle) < 1e-8);
        }
    }
}

TEST_CASE("f_epsilon") {
    const double eps = 0.1;
    SUBCASE("leading coefficients") {
        for (double p : {1.0, 1.5}) {
            const auto f = dseries::f_epsilon(eps, p, 64);
            const double z_norm = std::pow(dseries::zeta_one_plus(2 * eps), 1.0 / p);
            CHECK(f.at(1).real() == doctest::Approx(1.0 / z_norm).epsilon(1e-9));
            CHECK(f.at(2).real() ==
                  doctest::Approx((2.0 / p) * std::pow(2.0, -0.5 - eps) / z_norm)
                      .epsilon(1e-9));
        }
    }
    SUBCASE("p = 2: coefficient norm tends to 1 with an exact tail account") {
        const uint64_t N = 100000;
        const auto f = dseries::f_epsilon(eps, 2.0, N);
        const double norm = dseries::weighted_norm(
            f, numth::MultiplicativeSpec::divisor_power(0.0),
            dseries::WeightMode::divide);
        // ||f_eps||^2 = partial zeta(1+2eps) mass / full mass; the integral
        // tail N^{-2eps}/(2eps) bounds the deficit
        const double total = dseries::zeta_one_plus(2 * eps);
        const double tail_frac =
            std::pow(static_cast<double>(N), -2 * eps) / (2 * eps) / total;
        CHECK(norm < 1.0);
        CHECK(norm * norm == doctest::Approx(1.0 - tail_frac).epsilon(2e-3));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(dseries::f_epsilon(0.0, 1.5, 16), std::domain_error);
        CHECK_THROWS_AS(dseries::f_epsilon(0.1, 2.5, 16), std::domain_error);
        CHECK_THROWS_AS(dseries::f_epsilon(0.1, 0.5, 16), std::domain_error);
    }
}

TEST_CASE("zeta_one_plus matches the Euler-Maclaurin evaluator") {
    for (double x : {0.002, 0.02, 0.2, 1.0}) {
        CHECK(dseries::zeta_one_plus(x) ==
              doctest::Approx(numeric::zeta_em_real(1.0 + x)).epsilon(1e-9));
    }
}
