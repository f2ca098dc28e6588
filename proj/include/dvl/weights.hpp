#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dvl/arith.hpp"
#include "dvl/quadrature.hpp"

namespace dvl::weights {

enum class Kind {
  DivisorPower,  // w_n = d(n)^beta
  ZetaPower,     // w_n = d_{beta+1}(n)
};

// One of the two weight laws, parameterized by beta > 0. beta == 0 is the
// unit-weight (Hardy) degenerate case, constructible only through hardy();
// it exists for operator-norm comparisons against the unweighted space and
// has no radial density.
struct WeightFamily {
  Kind kind;
  double beta;

  static WeightFamily divisor_power(double beta);
  static WeightFamily zeta_power(double beta);
  static WeightFamily hardy();

  bool is_hardy() const { return beta == 0.0; }
  const char* kind_name() const {
    return kind == Kind::DivisorPower ? "div" : "zeta";
  }
};

// w(p^r); prime-independent.
double weight_prime_power(const WeightFamily& w, std::uint32_t r);
double weight(const WeightFamily& w, const arith::Factorization& f);
double weight(const WeightFamily& w, std::uint64_t n);  // trial factorization

// delta(w): 2^beta - 1 for DivisorPower, beta for ZetaPower.
double delta_exponent(const WeightFamily& w);

// Radial density M(r) of the per-variable disk measure, 0 < r < 1.
double radial_density(const WeightFamily& w, double r);

// int_0^1 r^n M(r) dr by adaptive quadrature; equals 1/w(p^n).
double disk_moment(const WeightFamily& w, std::uint32_t n,
                   const quad::QuadratureSpec& spec = {1e-12, 20000});

// w_1..w_N (index 0 unused), computed by a least-prime-factor sieve.
std::vector<double> weight_table(const WeightFamily& w, std::uint32_t N);

// Sum_{n<=x} w_n and the normalized ratio against x (log x)^delta.
double zw_partial(const WeightFamily& w, double x);
double chebyshev_ratio(const WeightFamily& w, double x);
// One sieve pass evaluating the partial sum at each ladder point (ascending).
std::vector<double> zw_partial_ladder(const WeightFamily& w,
                                      std::span<const double> xs);

// Empirical upper constant c with Sum_{n<=x} w_n <= c x (log x)^delta over
// the tested range; used for reported tail bounds.
double chebyshev_upper_constant(const WeightFamily& w);

}  // namespace dvl::weights
