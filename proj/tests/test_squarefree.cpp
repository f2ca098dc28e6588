#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "dvl/squarefree.hpp"

using dvl::squarefree::SquarefreeSeries;

namespace {

std::vector<std::uint64_t> first_primes(int J) {
  static const std::uint64_t ps[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                     31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  return {ps, ps + J};
}

// cube-time oracle: iterate sub-subsets directly
std::vector<double> oracle_convolve(const SquarefreeSeries& f,
                                    const SquarefreeSeries& g) {
  std::vector<double> h(f.size(), 0.0);
  for (std::uint64_t s = 0; s < f.size(); ++s) {
    for (std::uint64_t t = s;; t = (t - 1) & s) {
      h[s] += f[t] * g[s ^ t];
      if (t == 0) break;
    }
  }
  return h;
}

}  // namespace

TEST_CASE("construction and log cache") {
  auto f = SquarefreeSeries(first_primes(5));
  CHECK(f.size() == 32);
  for (std::uint64_t s = 0; s < f.size(); ++s) {
    double want = 0.0;
    for (int j = 0; j < 5; ++j)
      if (s >> j & 1) want += std::log(double(first_primes(5)[j]));
    CHECK(f.log_n(s) == doctest::Approx(want).epsilon(1e-12));
  }
  CHECK_THROWS_AS(SquarefreeSeries({3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SquarefreeSeries({1, 2}), std::invalid_argument);
}

TEST_CASE("zeta and mobius transforms invert each other") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<double> a(1 << 10);
  for (auto& x : a) x = val(rng);
  auto b = a;
  dvl::squarefree::zeta_transform(b);
  // zeta is the subset-sum transform
  for (std::uint64_t s : {0ull, 1ull, 5ull, 1023ull}) {
    double want = 0.0;
    for (std::uint64_t t = s;; t = (t - 1) & s) {
      want += a[t];
      if (t == 0) break;
    }
    CHECK(b[s] == doctest::Approx(want).epsilon(1e-12));
  }
  dvl::squarefree::mobius_transform(b);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(b[i] == doctest::Approx(a[i]).epsilon(1e-12));
}

TEST_CASE("subset convolution: singleton indicators") {
  auto f = SquarefreeSeries(first_primes(6));
  for (int j = 0; j < 6; ++j) f[std::uint64_t(1) << j] = 1.0;
  const auto h = dvl::squarefree::subset_convolve(f, f);
  CHECK(h[(1 << 0) | (1 << 3)] == doctest::Approx(2.0));
  CHECK(h[(1 << 1) | (1 << 4)] == doctest::Approx(2.0));
  CHECK(h[1 << 2] == doctest::Approx(0.0));
  CHECK(h[0] == doctest::Approx(0.0));
}

TEST_CASE("subset convolution: delta at the empty set is the unit") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  auto f = SquarefreeSeries(first_primes(7));
  for (auto& x : f.coeffs()) x = val(rng);
  auto delta = SquarefreeSeries(first_primes(7));
  delta[0] = 1.0;
  const auto h = dvl::squarefree::subset_convolve(f, delta);
  for (std::uint64_t s = 0; s < f.size(); ++s)
    CHECK(h[s] == doctest::Approx(f[s]).epsilon(1e-12));
}

TEST_CASE("subset convolution against the 3^J oracle at J = 12") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  auto f = SquarefreeSeries(first_primes(12));
  auto g = SquarefreeSeries(first_primes(12));
  for (auto& x : f.coeffs()) x = val(rng);
  for (auto& x : g.coeffs()) x = val(rng);
  const auto h = dvl::squarefree::subset_convolve(f, g);
  const auto want = oracle_convolve(f, g);
  for (std::uint64_t s = 0; s < f.size(); ++s)
    CHECK(h[s] == doctest::Approx(want[s]).epsilon(1e-10));
}

TEST_CASE("mismatched prime sets are rejected") {
  auto f = SquarefreeSeries(first_primes(4));
  auto g = SquarefreeSeries({2, 3, 5, 11});
  CHECK_THROWS_AS(dvl::squarefree::subset_convolve(f, g),
                  std::invalid_argument);
}

TEST_CASE("csv round trip") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  auto f = SquarefreeSeries(first_primes(6));
  for (auto& x : f.coeffs()) x = val(rng);
  std::ostringstream os;
  dvl::squarefree::write_csv(f, os);
  std::istringstream is(os.str());
  const auto g = dvl::squarefree::read_csv(is);
  REQUIRE(g.size() == f.size());
  CHECK(std::ranges::equal(g.prime_set(), f.prime_set()));
  for (std::uint64_t s = 0; s < f.size(); ++s) CHECK(g[s] == f[s]);
}
