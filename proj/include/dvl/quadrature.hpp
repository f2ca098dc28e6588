#pragma once

#include <functional>

#include "dvl/errors.hpp"

namespace dvl::quad {

enum class SemiInfiniteRule {
  // x = a - log(1-u) maps u in [0,1) onto [a, inf)
  ExpMap,
};

struct QuadratureSpec {
  double absolute_tolerance = 1e-10;
  int max_subdivisions = 4000;
  SemiInfiniteRule rule = SemiInfiniteRule::ExpMap;
};

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss(7)-Kronrod(15) on [a, b]: the interval with the
// largest local error estimate is bisected until the summed estimate meets
// the absolute tolerance. Handles integrable endpoint singularities by
// refinement (nodes are interior).
Result integrate(const Integrand& f, double a, double b,
                 const QuadratureSpec& spec = {});

// Integral over [a, inf) through the spec's semi-infinite substitution.
Result integrate_semi_infinite(const Integrand& f, double a,
                               const QuadratureSpec& spec = {});

// Same, but a non-converged result raises NumericFailure with diagnostics.
double integrate_or_throw(const Integrand& f, double a, double b,
                          const QuadratureSpec& spec = {});
double integrate_semi_infinite_or_throw(const Integrand& f, double a,
                                        const QuadratureSpec& spec = {});

}  // namespace dvl::quad
