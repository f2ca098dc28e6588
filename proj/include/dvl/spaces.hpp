#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dvl/quadrature.hpp"
#include "dvl/series.hpp"
#include "dvl/weights.hpp"

namespace dvl::spaces {

using series::Complex;
using series::DirichletSeries;
using weights::WeightFamily;

double norm_h2w(const WeightFamily& w, const DirichletSeries& f);
Complex inner_h2w(const WeightFamily& w, const DirichletSeries& f,
                  const DirichletSeries& g);

struct KernelValue {
  Complex value;       // truncated sum_{n<=N} w_n n^{-(s+conj(u))}
  double tail_bound;   // reported bound on the dropped tail
};
// Requires Re(s + conj(u)) > 1 (std::domain_error otherwise).
KernelValue kernel_value(const WeightFamily& w, Complex s, Complex u,
                         std::uint64_t N);

// I_2(f) = |a_1|^2 + 4 sum_{n>=2} (|a_n|^2 / w_n) (log n)^2 Q_n with
// Q_n = int_0^inf y n^{-2y} dy evaluated by quadrature. Equals ||f||^2.
double littlewood_paley_i2(const WeightFamily& w, const DirichletSeries& f,
                           const quad::QuadratureSpec& spec = {1e-12, 20000});

struct Grid {
  std::vector<double> sigmas;
  std::vector<double> ts;
};
// Grid supremum of (sigma - theta) |g'(sigma + it)| using the derivative of
// the partial sum S_N g; a lower bound of the Bloch norm.
double bloch_norm_estimate(const DirichletSeries& g, double theta,
                           const Grid& grid, std::uint64_t N);

}  // namespace dvl::spaces
