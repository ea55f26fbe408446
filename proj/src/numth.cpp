#include "dirichlet/numth.hpp"

#include "dirichlet/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace dirichlet::numth {

namespace {

std::vector<uint64_t> simple_sieve(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<char> mark(limit + 1, 1);
    mark[0] = mark[1] = 0;
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (mark[i])
            for (uint64_t j = i * i; j <= limit; j += i) mark[j] = 0;
    for (uint64_t i = 2; i <= limit; ++i)
        if (mark[i]) primes.push_back(i);
    return primes;
}

std::mutex g_prime_mutex;
std::vector<uint64_t> g_primes;  // cached increasing primes

void ensure_prime_count(size_t count) {
    if (g_primes.size() >= count) return;
    uint64_t bound = 64;
    if (count > 6) {
        double c = static_cast<double>(count);
        bound = static_cast<uint64_t>(c * (std::log(c) + std::log(std::log(c))) + 16);
    }
    while (true) {
        auto p = simple_sieve(bound);
        if (p.size() >= count) {
            g_primes = std::move(p);
            return;
        }
        bound *= 2;
    }
}

void ensure_prime_value(uint64_t p) {
    if (!g_primes.empty() && g_primes.back() >= p) return;
    uint64_t bound = std::max<uint64_t>(64, 2 * p);
    g_primes = simple_sieve(bound);
}

} // namespace

uint64_t nth_prime(size_t j) {
    if (j == 0) throw std::domain_error("nth_prime: index is 1-based");
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    ensure_prime_count(j);
    return g_primes[j - 1];
}

size_t prime_index(uint64_t p) {
    std::lock_guard<std::mutex> lock(g_prime_mutex);
    ensure_prime_value(p);
    auto it = std::lower_bound(g_primes.begin(), g_primes.end(), p);
    if (it == g_primes.end() || *it != p)
        throw std::domain_error("prime_index: " + std::to_string(p) + " is not prime");
    return static_cast<size_t>(it - g_primes.begin()) + 1;
}

std::vector<uint64_t> primes_upto(uint64_t limit) { return simple_sieve(limit); }

uint64_t MultiIndex::value() const {
    auto v = value_if_le(UINT64_MAX);
    if (!v) throw std::overflow_error("MultiIndex::value overflows 64 bits");
    return *v;
}

std::optional<uint64_t> MultiIndex::value_if_le(uint64_t cap) const {
    unsigned __int128 v = 1;
    for (const auto& [p, k] : factors)
        for (uint32_t i = 0; i < k; ++i) {
            v *= p;
            if (v > static_cast<unsigned __int128>(cap)) return std::nullopt;
        }
    return static_cast<uint64_t>(v);
}

uint32_t MultiIndex::omega() const {
    uint32_t s = 0;
    for (const auto& [p, k] : factors) s += k;
    return s;
}

uint64_t MultiIndex::divisor_count() const {
    uint64_t d = 1;
    for (const auto& [p, k] : factors) d *= (k + 1);
    return d;
}

uint32_t MultiIndex::exponent_of(uint64_t p) const {
    for (const auto& [q, k] : factors)
        if (q == p) return k;
    return 0;
}

std::vector<uint32_t> MultiIndex::dense_exponents() const {
    std::vector<uint32_t> dense;
    for (const auto& [p, k] : factors) {
        size_t j = prime_index(p);
        if (dense.size() < j) dense.resize(j, 0);
        dense[j - 1] = k;
    }
    return dense;
}

MultiIndex factorize(uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be >= 1");
    MultiIndex idx;
    uint64_t m = n;
    auto strip = [&](uint64_t p) {
        if (m % p == 0) {
            uint32_t k = 0;
            while (m % p == 0) { m /= p; ++k; }
            idx.factors.emplace_back(p, k);
        }
    };
    strip(2);
    strip(3);
    for (uint64_t f = 5; f * f <= m; f += 6) {
        strip(f);
        strip(f + 2);
    }
    if (m > 1) idx.factors.emplace_back(m, 1);
    return idx;
}

double rising_binomial(double y, uint32_t k) {
    // binom(y+k-1, k) = prod_{i=0}^{k-1} (y+i) / k!
    double num = 1.0, den = 1.0;
    for (uint32_t i = 0; i < k; ++i) {
        num *= (y + static_cast<double>(i));
        den *= static_cast<double>(i + 1);
    }
    return num / den;
}

MultiplicativeSpec MultiplicativeSpec::divisor_power(double alpha) {
    return MultiplicativeSpec(Kind::divisor_power, alpha);
}
MultiplicativeSpec MultiplicativeSpec::omega_power(double y) {
    return MultiplicativeSpec(Kind::omega_power, y);
}
MultiplicativeSpec MultiplicativeSpec::generalized_divisor(double y) {
    return MultiplicativeSpec(Kind::generalized_divisor, y);
}
MultiplicativeSpec MultiplicativeSpec::prime_power_table(std::vector<double> gamma) {
    if (gamma.empty() || gamma[0] != 1.0)
        throw std::domain_error("prime_power_table: gamma_0 must be 1");
    return MultiplicativeSpec(std::move(gamma));
}

double MultiplicativeSpec::at_prime_power(uint32_t k) const {
    if (k == 0) return 1.0;
    switch (kind_) {
        case Kind::divisor_power:
            return std::pow(static_cast<double>(k + 1), param_);
        case Kind::omega_power: {
            double v = 1.0;
            for (uint32_t i = 0; i < k; ++i) v *= param_;
            return v;
        }
        case Kind::generalized_divisor:
            return rising_binomial(param_, k);
        case Kind::table:
            if (k >= table_.size())
                throw std::domain_error("prime_power_table: exponent " +
                                        std::to_string(k) + " beyond table");
            return table_[k];
    }
    return 1.0;
}

double MultiplicativeSpec::operator()(const MultiIndex& idx) const {
    double v = 1.0;
    for (const auto& [p, k] : idx.factors) v *= at_prime_power(k);
    return v;
}

double MultiplicativeSpec::operator()(uint64_t n) const {
    return (*this)(factorize(n));
}

namespace {

// Values of spec at p^k for k = 0..k_max, shared by all primes.
std::vector<double> prime_power_cache(const MultiplicativeSpec& spec, uint32_t k_max) {
    std::vector<double> g(k_max + 1);
    for (uint32_t k = 0; k <= k_max; ++k) g[k] = spec.at_prime_power(k);
    return g;
}

struct Segment {
    uint64_t lo = 0, hi = 0;  // [lo, hi)
    std::vector<double> val;
    std::vector<uint64_t> rem;
};

void sieve_segment(Segment& seg, std::span<const uint64_t> base_primes,
                   std::span<const double> gk) {
    const uint64_t lo = seg.lo, hi = seg.hi;
    const uint64_t len = hi - lo;
    seg.val.assign(len, 1.0);
    seg.rem.resize(len);
    for (uint64_t i = 0; i < len; ++i) seg.rem[i] = lo + i;

    for (uint64_t p : base_primes) {
        if (p >= hi) break;
        uint64_t first = ((lo + p - 1) / p) * p;
        if (first < p) first = p;
        for (uint64_t m = first; m < hi; m += p) {
            uint64_t i = m - lo;
            uint64_t r = seg.rem[i] / p;
            uint32_t k = 1;
            while (r % p == 0) { r /= p; ++k; }
            seg.rem[i] = r;
            seg.val[i] *= gk[k];
        }
    }
    // leftover factor is a single prime > sqrt(x)
    const double g1 = gk[1];
    for (uint64_t i = 0; i < len; ++i)
        if (seg.rem[i] > 1) seg.val[i] *= g1;
}

} // namespace

void sieve_stream(const MultiplicativeSpec& spec, uint64_t x,
                  const std::function<void(uint64_t, std::span<const double>)>& visit,
                  const SieveOptions& opts) {
    if (x == 0) return;
    if (x > opts.limit)
        throw std::domain_error("sieve_stream: x exceeds configured limit");

    const uint64_t seg_size = std::max<uint64_t>(opts.segment_size, 1024);
    const int lanes = std::max(1, par::max_threads());
    const uint64_t bytes_needed =
        static_cast<uint64_t>(lanes) * seg_size * (sizeof(double) + sizeof(uint64_t));
    if (bytes_needed > opts.max_memory_bytes)
        throw resource_error(
            "sieve_stream: needs " + std::to_string(bytes_needed) +
                " bytes (segment_size * lanes * 16); raise max_memory_bytes or "
                "shrink segment_size",
            bytes_needed);

    uint32_t k_max = 0;
    while ((uint64_t(1) << (k_max + 1)) <= x) ++k_max;
    const auto gk = prime_power_cache(spec, k_max);

    uint64_t sqrt_x = static_cast<uint64_t>(std::sqrt(static_cast<double>(x)));
    while (sqrt_x * sqrt_x > x) --sqrt_x;
    while ((sqrt_x + 1) * (sqrt_x + 1) <= x) ++sqrt_x;
    const auto base_primes = simple_sieve(sqrt_x);

    std::vector<Segment> wave(lanes);
    for (uint64_t wave_lo = 1; wave_lo <= x;) {
        int used = 0;
        uint64_t lo = wave_lo;
        for (int l = 0; l < lanes && lo <= x; ++l) {
            wave[l].lo = lo;
            wave[l].hi = std::min(x + 1, lo + seg_size);
            lo = wave[l].hi;
            ++used;
        }
        par::for_each_index(used, [&](uint64_t l) {
            sieve_segment(wave[l], base_primes, gk);
        });
        for (int l = 0; l < used; ++l)
            visit(wave[l].lo, std::span<const double>(wave[l].val.data(),
                                                      wave[l].hi - wave[l].lo));
        wave_lo = lo;
    }
}

std::vector<CheckpointSum> sieve_sum(const MultiplicativeSpec& spec, uint64_t x,
                                     std::span<const uint64_t> checkpoints,
                                     const SieveOptions& opts) {
    for (size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] > x)
            throw std::invalid_argument("sieve_sum: checkpoint beyond x");
        if (i > 0 && checkpoints[i] < checkpoints[i - 1])
            throw std::invalid_argument("sieve_sum: checkpoints must be ascending");
    }
    std::vector<CheckpointSum> out;
    out.reserve(checkpoints.size());
    size_t next_cp = 0;
    double sum = 0.0, comp = 0.0;  // Kahan
    sieve_stream(spec, x, [&](uint64_t first, std::span<const double> vals) {
        for (size_t i = 0; i < vals.size(); ++i) {
            double y = vals[i] - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            uint64_t n = first + i;
            while (next_cp < checkpoints.size() && checkpoints[next_cp] == n) {
                out.push_back({n, sum});
                ++next_cp;
            }
        }
    }, opts);
    return out;
}

std::vector<double> mult_table(const MultiplicativeSpec& spec, uint64_t n_max,
                               const SieveOptions& opts) {
    std::vector<double> table(n_max + 1, 0.0);
    sieve_stream(spec, n_max, [&](uint64_t first, std::span<const double> vals) {
        std::copy(vals.begin(), vals.end(), table.begin() + first);
    }, opts);
    return table;
}

} // namespace dirichlet::numth
