#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dvl::arith {

struct Factor {
  std::uint64_t prime;
  std::uint32_t exponent;
};
// Strictly increasing primes; the product of prime^exponent is the
// factorized integer. Empty for n = 1.
using Factorization = std::vector<Factor>;

std::uint64_t unfactorize(const Factorization& f);

// Trial division; works for any n >= 1 without a table.
Factorization trial_factorize(std::uint64_t n);

// Sieve output: primes up to `limit` plus a least-prime-factor table up to
// `factor_limit` (defaults to min(limit, 1e7)). Sieving is segmented, so
// memory stays linear in the output. Immutable after construction.
class PrimeTable {
 public:
  static PrimeTable sieve(std::uint64_t limit, std::uint64_t factor_limit = 0);

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::uint64_t pi(std::uint64_t x) const;  // #{p <= x}, requires x <= limit
  std::uint64_t factor_limit() const {
    return lpf_.empty() ? 0 : lpf_.size() - 1;
  }
  std::uint32_t least_prime_factor(std::uint64_t n) const;
  // n-th prime, 1-based; requires k <= primes().size()
  std::uint64_t nth_prime(std::size_t k) const { return primes_.at(k - 1); }

 private:
  PrimeTable() = default;
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> lpf_;
};

// Streams every prime <= limit in increasing order without materializing
// the list; segmented, deterministic.
void for_each_prime(std::uint64_t limit,
                    const std::function<void(std::uint64_t)>& fn);

Factorization factorize(std::uint64_t n, const PrimeTable& table);

std::uint64_t divisor_count(const Factorization& f);  // d(n)
std::uint64_t divisor_count(std::uint64_t n, const PrimeTable& table);

// d_gamma(p^r) = gamma (gamma+1) ... (gamma+r-1) / r!
double generalized_divisor_prime_power(double gamma, std::uint32_t r);
double generalized_divisor(double gamma, const Factorization& f);
double generalized_divisor(double gamma, std::uint64_t n,
                           const PrimeTable& table);

struct OmegaCounts {
  std::uint32_t with_multiplicity;  // Omega(n)
  std::uint32_t distinct;           // omega(n)
};
OmegaCounts omega_counts(const Factorization& f);
OmegaCounts omega_counts(std::uint64_t n, const PrimeTable& table);

// kappa(n): exponent of the j-th prime at position j-1, trailing zeros
// trimmed. Requires every prime factor <= table.limit().
std::vector<std::uint32_t> multi_index(std::uint64_t n,
                                       const PrimeTable& table);

std::vector<std::uint64_t> divisors(const Factorization& f);  // ascending
std::vector<std::uint64_t> divisors(std::uint64_t n, const PrimeTable& table);

// All n <= N whose prime divisors lie among the first d primes, ascending
// (1 included).
std::vector<std::uint64_t> smooth_numbers(std::uint32_t d, std::uint64_t N,
                                          const PrimeTable& table);

}  // namespace dvl::arith
