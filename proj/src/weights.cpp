#include "dvl/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dvl::weights {
namespace {

constexpr double kInvE = 0.36787944117144232160;

void require_positive_beta(const WeightFamily& w, const char* what) {
  if (w.beta <= 0.0)
    throw std::invalid_argument(std::string(what) +
                                ": undefined for the unit-weight family");
}

// d_{beta+1}(p^r) for r <= 64, cached per call site via this small helper.
struct ZetaPowerTable {
  double v[65];
  explicit ZetaPowerTable(double beta) {
    v[0] = 1.0;
    for (std::uint32_t r = 1; r <= 64; ++r)
      v[r] = v[r - 1] * (beta + r) / r;
  }
};

}  // namespace

WeightFamily WeightFamily::divisor_power(double beta) {
  if (beta <= 0.0)
    throw std::invalid_argument("WeightFamily: beta must be > 0");
  return {Kind::DivisorPower, beta};
}

WeightFamily WeightFamily::zeta_power(double beta) {
  if (beta <= 0.0)
    throw std::invalid_argument("WeightFamily: beta must be > 0");
  return {Kind::ZetaPower, beta};
}

WeightFamily WeightFamily::hardy() { return {Kind::ZetaPower, 0.0}; }

double weight_prime_power(const WeightFamily& w, std::uint32_t r) {
  if (r == 0) return 1.0;
  if (w.kind == Kind::DivisorPower) return std::pow(r + 1.0, w.beta);
  // d_{beta+1}(p^r) = prod_{i=1..r} (beta + i) / i
  double v = 1.0;
  for (std::uint32_t i = 1; i <= r; ++i) v *= (w.beta + i) / i;
  return v;
}

double weight(const WeightFamily& w, const arith::Factorization& f) {
  double v = 1.0;
  for (const auto& [p, e] : f) v *= weight_prime_power(w, e);
  return v;
}

double weight(const WeightFamily& w, std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("weight: n must be >= 1");
  if (w.is_hardy()) return 1.0;
  return weight(w, arith::trial_factorize(n));
}

double delta_exponent(const WeightFamily& w) {
  return w.kind == Kind::DivisorPower ? std::exp2(w.beta) - 1.0 : w.beta;
}

double radial_density(const WeightFamily& w, double r) {
  require_positive_beta(w, "radial_density");
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("radial_density: r must lie in (0,1)");
  if (w.kind == Kind::DivisorPower)
    return std::pow(std::log(1.0 / r), w.beta - 1.0) / std::tgamma(w.beta);
  return w.beta * std::pow(1.0 - r, w.beta - 1.0);
}

double disk_moment(const WeightFamily& w, std::uint32_t n,
                   const quad::QuadratureSpec& spec) {
  require_positive_beta(w, "disk_moment");
  // The density is singular at r -> 1 when beta < 1, where the r variable
  // has no floating-point resolution left. Substituting ell = log(1/r)
  // (divisor-power law) resp. u = 1 - r (zeta-power law) moves the
  // singularity to 0, where refinement can run arbitrarily deep. The split
  // point is the image of r = 1/e.
  quad::QuadratureSpec half = spec;
  half.absolute_tolerance = 0.5 * spec.absolute_tolerance;
  const double beta = w.beta;
  if (w.kind == Kind::DivisorPower) {
    // int_0^inf e^{-(n+1) ell} ell^{beta-1} / Gamma(beta) d ell
    const double gamma_beta = std::tgamma(beta);
    auto f = [&](double ell) {
      return std::exp(-double(n + 1) * ell) * std::pow(ell, beta - 1.0) /
             gamma_beta;
    };
    const double cut = 100.0 + 3.0 * beta * std::log(beta + 2.0);
    return quad::integrate_or_throw(f, 0.0, 1.0, half) +
           quad::integrate_or_throw(f, 1.0, cut, half);
  }
  // int_0^1 (1-u)^n beta u^{beta-1} du
  auto f = [&](double u) {
    return std::pow(1.0 - u, double(n)) * beta * std::pow(u, beta - 1.0);
  };
  return quad::integrate_or_throw(f, 0.0, 1.0 - kInvE, half) +
         quad::integrate_or_throw(f, 1.0 - kInvE, 1.0, half);
}

std::vector<double> weight_table(const WeightFamily& w, std::uint32_t N) {
  std::vector<double> tbl(std::size_t(N) + 1, 1.0);
  if (N < 1) throw std::invalid_argument("weight_table: N must be >= 1");
  tbl[0] = 0.0;
  if (w.is_hardy()) return tbl;

  // least prime factor sieve, then multiply cached prime-power weights
  std::vector<std::uint32_t> lpf(std::size_t(N) + 1, 0);
  std::vector<std::uint32_t> ps;
  for (std::uint64_t i = 2; i <= N; ++i) {
    if (lpf[i] == 0) {
      lpf[i] = static_cast<std::uint32_t>(i);
      ps.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : ps) {
      if (p > lpf[i] || i * p > N) break;
      lpf[i * p] = p;
    }
  }

  const bool div = w.kind == Kind::DivisorPower;
  ZetaPowerTable zp(w.beta);
  // pow(d, beta) cache for the divisor-power family; d(n) <= 2^25 here
  std::vector<double> dpow;
  auto dvalue = [&](std::uint64_t d) {
    if (d >= dpow.size()) dpow.resize(d + 1, -1.0);
    if (dpow[d] < 0.0) dpow[d] = std::pow(double(d), w.beta);
    return dpow[d];
  };

  for (std::uint64_t n = 2; n <= N; ++n) {
    std::uint64_t m = n;
    double wn = 1.0;
    std::uint64_t dn = 1;
    while (m > 1) {
      const std::uint32_t p = lpf[m];
      std::uint32_t e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (div)
        dn *= (e + 1);
      else
        wn *= zp.v[e];
    }
    tbl[n] = div ? dvalue(dn) : wn;
  }
  return tbl;
}

std::vector<double> zw_partial_ladder(const WeightFamily& w,
                                      std::span<const double> xs) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw std::invalid_argument("zw_partial_ladder: ladder must ascend");
  if (xs.empty()) return {};
  if (!(xs.front() >= 2.0))
    throw std::invalid_argument("zw_partial_ladder: x must be >= 2");
  const auto X = static_cast<std::uint32_t>(xs.back());
  const std::vector<double> tbl = weight_table(w, X);
  std::vector<double> out(xs.size());
  double s = 0.0, c = 0.0;
  std::size_t k = 0;
  for (std::uint64_t n = 1; n <= X; ++n) {
    const double y = tbl[n] - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
    while (k < xs.size() && double(n + 1) > xs[k]) out[k++] = s;
  }
  while (k < xs.size()) out[k++] = s;
  return out;
}

double zw_partial(const WeightFamily& w, double x) {
  if (!(x >= 2.0)) throw std::invalid_argument("zw_partial: x must be >= 2");
  const double xs[1] = {x};
  return zw_partial_ladder(w, xs)[0];
}

double chebyshev_ratio(const WeightFamily& w, double x) {
  const double delta = delta_exponent(w);
  return zw_partial(w, x) / (x * std::pow(std::log(x), delta));
}

double chebyshev_upper_constant(const WeightFamily& w) {
  const double ladder[] = {1e2, 3e2, 1e3, 3e3, 1e4, 1e5};
  const auto sums = zw_partial_ladder(w, ladder);
  const double delta = delta_exponent(w);
  double c = 0.0;
  for (std::size_t i = 0; i < std::size(ladder); ++i)
    c = std::max(c, sums[i] / (ladder[i] * std::pow(std::log(ladder[i]), delta)));
  return 1.5 * c;
}

}  // namespace dvl::weights
