#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "dvl/arith.hpp"

using namespace dvl::arith;

namespace {

// independent oracle: classic boolean sieve, no shared code with the library
std::vector<bool> oracle_sieve(std::uint64_t limit) {
  std::vector<bool> is_prime(limit + 1, true);
  is_prime[0] = is_prime[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (is_prime[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) is_prime[j] = false;
  return is_prime;
}

// independent oracle: factor by dividing out every integer 2..n
std::vector<std::pair<std::uint64_t, std::uint32_t>> oracle_factor(
    std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> f;
  for (std::uint64_t d = 2; d <= n; ++d) {
    std::uint32_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) f.push_back({d, e});
  }
  return f;
}

}  // namespace

TEST_CASE("sieve basics") {
  auto t = PrimeTable::sieve(30);
  std::vector<std::uint32_t> want{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  CHECK(std::vector<std::uint32_t>(t.primes().begin(), t.primes().end()) ==
        want);
  auto t2 = PrimeTable::sieve(2);
  CHECK(t2.primes().size() == 1);
  CHECK(t2.primes()[0] == 2);
  CHECK_THROWS_AS(PrimeTable::sieve(1), std::invalid_argument);
}

TEST_CASE("pi(10^6) against the oracle sieve") {
  const std::uint64_t limit = 1'000'000;
  auto t = PrimeTable::sieve(limit);
  CHECK(t.pi(limit) == 78498);
  const auto oracle = oracle_sieve(limit);
  const auto count = std::count(oracle.begin(), oracle.end(), true);
  CHECK(t.pi(limit) == std::uint64_t(count));
  // spot-check a few intermediate values
  for (std::uint64_t x : {10ULL, 97ULL, 1000ULL, 999983ULL}) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 2; i <= x; ++i) c += oracle[i];
    CHECK(t.pi(x) == c);
  }
}

TEST_CASE("segmented streaming matches the table") {
  auto t = PrimeTable::sieve(3'000'000);
  std::vector<std::uint32_t> streamed;
  for_each_prime(3'000'000,
                 [&](std::uint64_t p) { streamed.push_back(std::uint32_t(p)); });
  CHECK(streamed.size() == t.primes().size());
  CHECK(std::equal(streamed.begin(), streamed.end(), t.primes().begin()));
}

TEST_CASE("factorize") {
  auto t = PrimeTable::sieve(1'000'000);
  auto f = factorize(360, t);
  REQUIRE(f.size() == 3);
  CHECK(f[0].prime == 2);
  CHECK(f[0].exponent == 3);
  CHECK(f[1].prime == 3);
  CHECK(f[1].exponent == 2);
  CHECK(f[2].prime == 5);
  CHECK(f[2].exponent == 1);
  CHECK(factorize(1, t).empty());
  CHECK_THROWS_AS(factorize(0, t), std::invalid_argument);
  CHECK_THROWS_AS(factorize(t.factor_limit() + 1, t), std::invalid_argument);

  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> d(1, 1'000'000);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = d(rng);
    CHECK(unfactorize(factorize(n, t)) == n);
    const auto want = oracle_factor(n);
    const auto got = factorize(n, t);
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
      CHECK(got[k].prime == want[k].first);
      CHECK(got[k].exponent == want[k].second);
    }
  }
}

TEST_CASE("reconstruction over the full range") {
  auto t = PrimeTable::sieve(1'000'000);
  for (std::uint64_t n = 1; n <= 1'000'000; ++n)
    if (unfactorize(factorize(n, t)) != n) {
      REQUIRE(unfactorize(factorize(n, t)) == n);
    }
  CHECK(true);
}

TEST_CASE("divisor_count") {
  auto t = PrimeTable::sieve(3000000);
  CHECK(divisor_count(12, t) == 6);
  CHECK(divisor_count(1, t) == 1);
  for (std::uint32_t k = 0; k <= 20; ++k)
    CHECK(divisor_count(std::uint64_t(1) << k, t) == k + 1);
}

TEST_CASE("generalized divisor function") {
  auto t = PrimeTable::sieve(20000);
  for (std::uint64_t p : {2, 3, 5})
    CHECK(generalized_divisor(3.0, p * p, t) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(generalized_divisor(1.5, 1, t) == 1.0);
  CHECK_THROWS_AS(generalized_divisor(0.0, 4, t), std::invalid_argument);
  CHECK_THROWS_AS(generalized_divisor(-1.0, 4, t), std::invalid_argument);

  // d_2(n) = d(n), checked against an independent convolution oracle for
  // the zeta^2 coefficients: c[n] = #divisors by double loop.
  const std::uint64_t N = 10000;
  std::vector<std::uint32_t> conv(N + 1, 0);
  for (std::uint64_t a = 1; a <= N; ++a)
    for (std::uint64_t b = 1; a * b <= N; ++b) conv[a * b] += 1;
  for (std::uint64_t n = 1; n <= N; ++n) {
    CHECK(generalized_divisor(2.0, n, t) ==
          doctest::Approx(double(conv[n])).epsilon(1e-12));
    CHECK(divisor_count(n, t) == conv[n]);
  }
}

TEST_CASE("d_gamma prime power monotone in r for gamma >= 1") {
  for (double gamma : {1.0, 1.5, 2.0, 3.0}) {
    double prev = 1.0;
    for (std::uint32_t rexp = 1; rexp <= 30; ++rexp) {
      const double cur = generalized_divisor_prime_power(gamma, rexp);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("omega counts") {
  auto t = PrimeTable::sieve(30000);
  auto c = omega_counts(12, t);
  CHECK(c.with_multiplicity == 3);
  CHECK(c.distinct == 2);
  c = omega_counts(1, t);
  CHECK(c.with_multiplicity == 0);
  CHECK(c.distinct == 0);
  for (std::uint64_t p : {2, 7, 13}) {
    std::uint64_t pk = 1;
    for (std::uint32_t k = 1; k <= 4; ++k) {
      pk *= p;
      auto oc = omega_counts(pk, t);
      CHECK(oc.with_multiplicity == k);
      CHECK(oc.distinct == 1);
    }
  }
}

TEST_CASE("Omega >= omega with equality iff squarefree") {
  auto t = PrimeTable::sieve(10000);
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    const auto c = omega_counts(n, t);
    CHECK(c.with_multiplicity >= c.distinct);
    bool squarefree = true;
    for (const auto& [p, e] : factorize(n, t)) squarefree &= (e == 1);
    CHECK((c.with_multiplicity == c.distinct) == squarefree);
  }
}

TEST_CASE("multi_index") {
  auto t = PrimeTable::sieve(1000);
  CHECK(multi_index(10, t) == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(multi_index(1, t).empty());
  for (std::size_t j = 1; j <= 10; ++j) {
    auto kappa = multi_index(t.nth_prime(j), t);
    CHECK(kappa.size() == j);
    for (std::size_t i = 0; i + 1 < j; ++i) CHECK(kappa[i] == 0);
    CHECK(kappa[j - 1] == 1);
  }
}

TEST_CASE("divisors") {
  auto t = PrimeTable::sieve(20000);
  CHECK(divisors(12, t) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(1, t) == std::vector<std::uint64_t>{1});
  for (std::uint64_t n = 1; n <= 10000; n += 7) {
    const auto ds = divisors(n, t);
    // brute-force divisibility scan
    std::uint64_t cnt = 0;
    for (std::uint64_t k = 1; k <= n; ++k) cnt += (n % k == 0);
    CHECK(ds.size() == cnt);
    CHECK(ds.size() == divisor_count(n, t));
    CHECK(std::is_sorted(ds.begin(), ds.end()));
  }
}

TEST_CASE("smooth numbers") {
  auto t = PrimeTable::sieve(1'000'000);
  CHECK(smooth_numbers(2, 10, t) ==
        std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9});
  CHECK(smooth_numbers(1, 20, t) == std::vector<std::uint64_t>{1, 2, 4, 8, 16});

  // count of 5-smooth numbers <= 10^6 against a factorization scan
  const auto smooth = smooth_numbers(3, 1'000'000, t);
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= 1'000'000; ++n) {
    bool ok = true;
    for (const auto& [p, e] : factorize(n, t)) ok &= (p <= 5);
    count += ok;
  }
  CHECK(smooth.size() == count);
  CHECK(std::is_sorted(smooth.begin(), smooth.end()));
}

TEST_CASE("multiplicativity on coprime pairs up to 10^3") {
  auto t = PrimeTable::sieve(1'000'000);
  std::vector<std::uint64_t> d(1001);
  std::vector<double> dg(1001);
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    d[n] = divisor_count(n, t);
    dg[n] = generalized_divisor(2.5, n, t);
  }
  std::size_t bad = 0;
  for (std::uint64_t k = 1; k <= 1000; ++k)
    for (std::uint64_t l = 1; l <= 1000; ++l) {
      if (std::gcd(k, l) != 1) continue;
      if (divisor_count(k * l, t) != d[k] * d[l]) ++bad;
      const double prod = dg[k] * dg[l];
      if (std::fabs(generalized_divisor(2.5, k * l, t) - prod) >
          1e-12 * prod)
        ++bad;
    }
  CHECK(bad == 0);
}
