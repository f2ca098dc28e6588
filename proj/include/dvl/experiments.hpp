#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dvl/operators.hpp"
#include "dvl/quadrature.hpp"
#include "dvl/report.hpp"
#include "dvl/series.hpp"
#include "dvl/squarefree.hpp"
#include "dvl/weights.hpp"

namespace dvl::experiments {

using report::ExperimentReport;
using series::DirichletSeries;
using weights::WeightFamily;

struct RunContext {
  quad::QuadratureSpec quad{};
  std::uint64_t prime_limit = 1'000'000'000;
  std::uint64_t seed = 20260809;
  int threads = 1;
};

// Diagonal eigenvalues of T*_g T_g for g = e_{w,q}: apply-based column
// norms against the closed form, k = 1..K.
ExperimentReport exp_diagonal(const WeightFamily& w, std::uint64_t q,
                              std::uint32_t K, const RunContext& ctx);

// Growth of the restricted quotient R(J) = ||T~_g f_J||_lb / ||f_J|| for the
// weighted-zeta primitive symbol with parameters (a, gamma), J = 4..j_max.
ExperimentReport exp_primitive_zw(const WeightFamily& w, double a,
                                  double gamma, int j_max,
                                  const RunContext& ctx);

// 2-homogeneous sharpness quotients over a ladder of window endpoints x;
// the auxiliary prime q ~ e^x enters only through log q = x and w_q = w_2.
ExperimentReport exp_homo_sharpness(const WeightFamily& w, double eps,
                                    std::span<const double> x_ladder,
                                    const RunContext& ctx);

// Prime sums h_j against their slowly-varying surrogates, j in {1,2,3}.
ExperimentReport exp_hj(int j, double delta, double eta,
                        std::span<const double> sigma_prime_ladder,
                        std::uint64_t prime_limit, bool tail_model,
                        const RunContext& ctx);

// Triple prime sum S(P): convergence/divergence dichotomy in (delta, eta).
ExperimentReport exp_triple_sum(double delta, double eta,
                                std::span<const double> p_ladder,
                                const RunContext& ctx);

// Section norms of T_g against the Hankel form of the same symbol
// rho_k = w_k k^{-a} / (log k)^{delta+1}, over a ladder of truncations.
ExperimentReport exp_hankel_vs_volterra(const WeightFamily& w, double a,
                                        std::span<const std::uint32_t> n_ladder,
                                        const RunContext& ctx);

// Partial sums of the completely multiplicative symbol psi(p) = lambda
// p^{-1} log p against the exp(lambda/sigma) surrogate.
ExperimentReport exp_psi_symbol(double lambda,
                                std::span<const double> sigma_ladder,
                                std::uint64_t N, const RunContext& ctx);

// Divergent harmonic-log sums driving the two-prime counterexample.
ExperimentReport exp_two_prime(const WeightFamily& w,
                               std::span<const std::uint64_t> m_ladder,
                               const RunContext& ctx);

// J(p,T) = (log T)^{-2} int_0^K x M(T p^{2x}) dx against the case-split
// bound M(T) / M(T p^2).
ExperimentReport exp_int0ld(const WeightFamily& w, double p,
                            std::span<const double> t_ladder,
                            const RunContext& ctx);

// Column norms ||T_g e_{w,n}|| along a ladder of n.
ExperimentReport exp_column_norms(const WeightFamily& w,
                                  const DirichletSeries& g,
                                  std::span<const std::uint64_t> n_ladder,
                                  std::uint64_t N, const RunContext& ctx);

// Exposed for cross-checks: the subset-convolution coefficients A_S of
// T~_g f_J used by exp_primitive_zw (rank-geometric fast path, one zeta
// transform). Indexed by subset masks of the first J primes.
squarefree::SquarefreeSeries primitive_zw_subset_A(const WeightFamily& w,
                                                   double a, double gamma,
                                                   int J);

// Triple-sum evaluation with an explicit outer summation direction, for the
// reorder-invariance check.
double triple_sum_value(double delta, double eta, double P,
                        bool reverse_order = false);

}  // namespace dvl::experiments
