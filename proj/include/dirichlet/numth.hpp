#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace dirichlet::numth {

// Prime-exponent multi-index kappa(n): n = prod p^k over the stored factors.
// Stored sparsely as (prime, exponent) pairs with primes ascending and
// exponents >= 1; n = 1 is the empty list. dense_exponents() recovers the
// sequence (kappa_1, kappa_2, ...) indexed by p_1 = 2, p_2 = 3, ...
struct MultiIndex {
    std::vector<std::pair<uint64_t, uint32_t>> factors;

    uint64_t value() const;  // throws std::overflow_error past 2^64
    std::optional<uint64_t> value_if_le(uint64_t cap) const;
    uint32_t omega() const;          // sum of exponents
    uint64_t divisor_count() const;  // prod (k + 1)
    uint32_t exponent_of(uint64_t p) const;
    std::vector<uint32_t> dense_exponents() const;

    auto operator<=>(const MultiIndex&) const = default;
};

MultiIndex factorize(uint64_t n);  // n >= 1; throws std::domain_error on n = 0

// p_j for 1-based j (nth_prime(1) = 2). Cached, grows on demand.
uint64_t nth_prime(size_t j);
// 1-based index of prime p (2 -> 1). Sieves up to p; meant for small p.
size_t prime_index(uint64_t p);
// Primes up to limit inclusive.
std::vector<uint64_t> primes_upto(uint64_t limit);

// A multiplicative function given by its values on prime powers. All
// supported kinds are independent of the prime itself:
//   divisor_power(alpha):       d(n)^alpha,  value (k+1)^alpha at p^k
//   omega_power(y):             y^Omega(n),  value y^k
//   generalized_divisor(y):     d_y(n), coefficients of zeta^y, binom(y+k-1, k)
//   prime_power_table(gamma):   Gamma(p^k) = gamma[k], gamma[0] = 1
class MultiplicativeSpec {
public:
    static MultiplicativeSpec divisor_power(double alpha);
    static MultiplicativeSpec omega_power(double y);
    static MultiplicativeSpec generalized_divisor(double y);
    static MultiplicativeSpec prime_power_table(std::vector<double> gamma);

    // Value at p^k; k = 0 gives 1. Throws std::domain_error past the table.
    double at_prime_power(uint32_t k) const;
    // mult_eval: value at n via factorization.
    double operator()(uint64_t n) const;
    double operator()(const MultiIndex& idx) const;

private:
    enum class Kind { divisor_power, omega_power, generalized_divisor, table };
    Kind kind_;
    double param_ = 0.0;
    std::vector<double> table_;
    MultiplicativeSpec(Kind k, double p) : kind_(k), param_(p) {}
    explicit MultiplicativeSpec(std::vector<double> t)
        : kind_(Kind::table), table_(std::move(t)) {}
};

// binom(y + k - 1, k) for real y, exact at negative integers.
double rising_binomial(double y, uint32_t k);

struct CheckpointSum {
    uint64_t x;
    double sum;
};

struct SieveOptions {
    uint64_t segment_size = uint64_t(1) << 22;
    uint64_t max_memory_bytes = uint64_t(1) << 30;
    uint64_t limit = uint64_t(1000000000);  // hard cap on x
};

// Raised when a sieve request exceeds the configured memory budget.
class resource_error : public std::runtime_error {
public:
    resource_error(const std::string& msg, uint64_t required)
        : std::runtime_error(msg), required_bytes(required) {}
    uint64_t required_bytes;
};

// Streams spec(n) for n = 1..x in ascending segments: visit(first_n, values)
// where values[i] = spec(first_n + i). Segments are sieved in parallel but
// visited in order on the calling thread.
void sieve_stream(const MultiplicativeSpec& spec, uint64_t x,
                  const std::function<void(uint64_t, std::span<const double>)>& visit,
                  const SieveOptions& opts = {});

// Partial sums S(t) = sum_{n<=t} spec(n) at the given ascending checkpoints.
std::vector<CheckpointSum> sieve_sum(const MultiplicativeSpec& spec, uint64_t x,
                                     std::span<const uint64_t> checkpoints,
                                     const SieveOptions& opts = {});

// Dense table spec(1..N), index n (entry 0 unused, set to 0).
std::vector<double> mult_table(const MultiplicativeSpec& spec, uint64_t n_max,
                               const SieveOptions& opts = {});

} // namespace dirichlet::numth
