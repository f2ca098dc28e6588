#include "dvl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvl::arith {
namespace {

constexpr std::uint64_t kDefaultFactorLimit = 10'000'000;
constexpr std::uint64_t kSegment = 1u << 20;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Plain odd-only sieve, used for base primes and small limits.
std::vector<std::uint32_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  const std::uint64_t half = (limit - 1) / 2;  // index i <-> odd 2i+1
  std::vector<bool> composite(half + 1, false);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = (p * p - 1) / 2; j <= half; j += p)
      composite[j] = true;
  }
  for (std::uint64_t i = 1; i <= half; ++i)
    if (!composite[i]) primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
  return primes;
}

}  // namespace

void for_each_prime(std::uint64_t limit,
                    const std::function<void(std::uint64_t)>& fn) {
  if (limit < 2) return;
  if (limit <= 4 * kSegment) {
    for (std::uint32_t p : simple_sieve(limit)) fn(p);
    return;
  }
  const std::uint64_t root = isqrt(limit);
  const auto base = simple_sieve(root);
  for (std::uint64_t p : base) fn(p);
  std::vector<bool> composite;
  for (std::uint64_t low = root + 1; low <= limit; low += kSegment) {
    const std::uint64_t high = std::min(limit, low + kSegment - 1);
    composite.assign(high - low + 1, false);
    for (std::uint64_t p : base) {
      if (p == 2) continue;
      std::uint64_t start = ((low + p - 1) / p) * p;
      if (start < p * p) start = p * p;
      if ((start & 1) == 0) start += p;  // odd multiples only
      for (std::uint64_t j = start; j <= high; j += 2 * p)
        composite[j - low] = true;
    }
    std::uint64_t n = low | 1;  // first odd >= low
    for (; n <= high; n += 2)
      if (!composite[n - low]) fn(n);
  }
}

PrimeTable PrimeTable::sieve(std::uint64_t limit, std::uint64_t factor_limit) {
  if (limit < 2) throw std::invalid_argument("sieve: limit must be >= 2");
  if (limit > 0xFFFFFFFFull)
    throw std::invalid_argument("sieve: limit must fit in 32 bits");
  if (factor_limit == 0) factor_limit = std::min(limit, kDefaultFactorLimit);
  factor_limit = std::min(factor_limit, limit);

  PrimeTable t;
  t.limit_ = limit;
  for_each_prime(limit, [&](std::uint64_t p) {
    t.primes_.push_back(static_cast<std::uint32_t>(p));
  });

  // Linear sieve for the least-prime-factor table.
  t.lpf_.assign(factor_limit + 1, 0);
  std::vector<std::uint32_t> lp_primes;
  for (std::uint64_t i = 2; i <= factor_limit; ++i) {
    if (t.lpf_[i] == 0) {
      t.lpf_[i] = static_cast<std::uint32_t>(i);
      lp_primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : lp_primes) {
      if (p > t.lpf_[i] || i * p > factor_limit) break;
      t.lpf_[i * p] = p;
    }
  }
  if (factor_limit >= 1) t.lpf_[1] = 1;
  return t;
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
  if (x > limit_)
    throw std::invalid_argument("pi: argument exceeds the sieve limit");
  auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
  return static_cast<std::uint64_t>(it - primes_.begin());
}

std::uint32_t PrimeTable::least_prime_factor(std::uint64_t n) const {
  if (n < 2 || n > factor_limit())
    throw std::invalid_argument("least_prime_factor: n out of table range");
  return lpf_[n];
}

std::uint64_t unfactorize(const Factorization& f) {
  std::uint64_t n = 1;
  for (const auto& [p, e] : f)
    for (std::uint32_t i = 0; i < e; ++i) n *= p;
  return n;
}

Factorization trial_factorize(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("trial_factorize: n must be >= 1");
  Factorization f;
  auto strip = [&](std::uint64_t p) {
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) f.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

Factorization factorize(std::uint64_t n, const PrimeTable& table) {
  if (n < 1 || n > table.factor_limit())
    throw std::invalid_argument(
        "factorize: n outside [1, factor_limit] of the table");
  Factorization f;
  while (n > 1) {
    const std::uint64_t p = table.least_prime_factor(n);
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  return f;
}

std::uint64_t divisor_count(const Factorization& f) {
  std::uint64_t d = 1;
  for (const auto& [p, e] : f) d *= (e + 1);
  return d;
}

std::uint64_t divisor_count(std::uint64_t n, const PrimeTable& table) {
  return divisor_count(factorize(n, table));
}

double generalized_divisor_prime_power(double gamma, std::uint32_t r) {
  if (gamma <= 0.0)
    throw std::invalid_argument("generalized_divisor: gamma must be > 0");
  double v = 1.0;
  for (std::uint32_t i = 0; i < r; ++i) v *= (gamma + i) / (i + 1);
  return v;
}

double generalized_divisor(double gamma, const Factorization& f) {
  if (gamma <= 0.0)
    throw std::invalid_argument("generalized_divisor: gamma must be > 0");
  double v = 1.0;
  for (const auto& [p, e] : f) v *= generalized_divisor_prime_power(gamma, e);
  return v;
}

double generalized_divisor(double gamma, std::uint64_t n,
                           const PrimeTable& table) {
  return generalized_divisor(gamma, factorize(n, table));
}

OmegaCounts omega_counts(const Factorization& f) {
  OmegaCounts c{0, 0};
  for (const auto& [p, e] : f) {
    c.with_multiplicity += e;
    c.distinct += 1;
  }
  return c;
}

OmegaCounts omega_counts(std::uint64_t n, const PrimeTable& table) {
  return omega_counts(factorize(n, table));
}

std::vector<std::uint32_t> multi_index(std::uint64_t n,
                                       const PrimeTable& table) {
  const Factorization f = factorize(n, table);
  if (f.empty()) return {};
  const std::uint64_t top = table.pi(f.back().prime);
  std::vector<std::uint32_t> kappa(top, 0);
  for (const auto& [p, e] : f) kappa[table.pi(p) - 1] = e;
  return kappa;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> ds{1};
  for (const auto& [p, e] : f) {
    const std::size_t m = ds.size();
    std::uint64_t pk = 1;
    for (std::uint32_t i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < m; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

std::vector<std::uint64_t> divisors(std::uint64_t n, const PrimeTable& table) {
  return divisors(factorize(n, table));
}

std::vector<std::uint64_t> smooth_numbers(std::uint32_t d, std::uint64_t N,
                                          const PrimeTable& table) {
  if (d < 1) throw std::invalid_argument("smooth_numbers: d must be >= 1");
  if (N < 1) throw std::invalid_argument("smooth_numbers: N must be >= 1");
  if (d > table.primes().size())
    throw std::invalid_argument("smooth_numbers: table has fewer than d primes");
  std::vector<std::uint64_t> out;
  // DFS over nondecreasing prime factors
  std::vector<std::pair<std::uint64_t, std::uint32_t>> stack{{1, 0}};
  while (!stack.empty()) {
    auto [n, i] = stack.back();
    stack.pop_back();
    out.push_back(n);
    for (std::uint32_t j = i; j < d; ++j) {
      const std::uint64_t p = table.primes()[j];
      if (n > N / p) break;
      stack.push_back({n * p, j});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dvl::arith
