#include "dvl/experiments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "dvl/kernels.hpp"
#include "dvl/parallel.hpp"
#include "dvl/spaces.hpp"

namespace dvl::experiments {
namespace {

struct Kahan {
  double s = 0.0, c = 0.0;
  void accum(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

ExperimentReport make_report(const std::string& name, const RunContext& ctx) {
  ExperimentReport r;
  r.name = name;
  r.seed = ctx.seed;
  r.prime_limit = ctx.prime_limit;
  r.threads = ctx.threads;
  r.kernel = kernels::active().name;
  r.tolerances.emplace_back("quad_absolute_tolerance",
                            ctx.quad.absolute_tolerance);
  r.tolerances.emplace_back("quad_max_subdivisions",
                            double(ctx.quad.max_subdivisions));
  return r;
}

std::vector<std::uint64_t> first_primes(int J) {
  std::vector<std::uint64_t> ps;
  arith::for_each_prime(1000, [&](std::uint64_t p) {
    if (int(ps.size()) < J) ps.push_back(p);
  });
  if (int(ps.size()) < J)
    throw std::invalid_argument("prime table too small for requested J");
  return ps;
}

}  // namespace

// ---------------------------------------------------------------------------
// diagonal eigenvalues

ExperimentReport exp_diagonal(const WeightFamily& w, std::uint64_t q,
                              std::uint32_t K, const RunContext& ctx) {
  if (q < 2) throw std::invalid_argument("exp_diagonal: q must be >= 2");
  if (K < 2) throw std::invalid_argument("exp_diagonal: K must be >= 2");
  if (arith::trial_factorize(q).size() != 1 ||
      arith::trial_factorize(q)[0].exponent != 1)
    throw std::invalid_argument("exp_diagonal: q must be prime");
  Timer timer;
  ExperimentReport r = make_report("diagonal", ctx);
  r.param("family", w.kind_name());
  r.param("beta", w.beta);
  r.param("q", q);
  r.param("K", std::uint64_t(K));
  r.columns = {"k", "norm_apply", "lambda_formula", "abs_diff"};

  const std::uint64_t N = q * std::uint64_t(K);
  const DirichletSeries g = series::basis_vector(w, q, N);
  const double wq = weights::weight(w, q);
  const double lq = std::log(double(q));
  for (std::uint32_t k = 1; k <= K; ++k) {
    const DirichletSeries f = series::basis_vector(w, k, N);
    const DirichletSeries tf = series::volterra_apply(g, f, N);
    const double measured = spaces::norm_h2w(w, tf);
    const double wk = weights::weight(w, k);
    const double wqk = weights::weight(w, q * std::uint64_t(k));
    const double lambda =
        std::sqrt(wq * wk / wqk) * lq / std::log(double(q) * double(k));
    r.add_row({double(k), measured, lambda, std::fabs(measured - lambda)});
  }
  r.wall_time_s = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// primitive of the weighted zeta: restricted quotient growth

squarefree::SquarefreeSeries primitive_zw_subset_A(const WeightFamily& w,
                                                   double a, double gamma,
                                                   int J) {
  auto primes = first_primes(J);
  squarefree::SquarefreeSeries A(primes);
  const std::size_t size = A.size();
  const double w2 = weights::weight_prime_power(w, 1);
  const double alpha = std::sqrt(w2);

  std::vector<double> apow(J + 1);
  apow[0] = 1.0;
  for (int k = 1; k <= J; ++k) apow[k] = apow[k - 1] * alpha;

  // c[S] = alpha^|S| exp(-a L_S) / L_S^gamma (c[empty] = 1); the subset
  // convolution of the rank-geometric a_S with b collapses to
  // A_S = alpha^|S| * zeta(c)[S].
  const auto& kr = kernels::active();
  auto c = A.coeffs();
  c[0] = 1.0;
  const auto& L = A.log_table();
  constexpr std::size_t CH = std::size_t(1) << 14;
  std::vector<double> t1(CH), t2(CH);
  for (std::size_t s0 = 1; s0 < size; s0 += CH) {
    const std::size_t cnt = std::min(CH, size - s0);
    for (std::size_t i = 0; i < cnt; ++i) t1[i] = -a * L[s0 + i];
    kr.vexp(t1.data(), t1.data(), cnt);
    kr.vlog(t2.data(), L.data() + s0, cnt);
    for (std::size_t i = 0; i < cnt; ++i) t2[i] *= -gamma;
    kr.vexp(t2.data(), t2.data(), cnt);
    for (std::size_t i = 0; i < cnt; ++i)
      c[s0 + i] = apow[std::popcount(s0 + i)] * t1[i] * t2[i];
  }
  squarefree::zeta_transform(c);
  for (std::size_t s = 0; s < size; ++s) c[s] *= apow[std::popcount(s)];
  return A;
}

ExperimentReport exp_primitive_zw(const WeightFamily& w, double a,
                                  double gamma, int j_max,
                                  const RunContext& ctx) {
  if (!(a >= 0.5 && a < 1.0))
    throw std::invalid_argument("exp_primitive_zw: need 1/2 <= a < 1");
  const double delta = weights::delta_exponent(w);
  if (!(2.0 * gamma > delta - 1.0))
    throw std::invalid_argument("exp_primitive_zw: need 2 gamma > delta - 1");
  if (j_max < 4 || j_max > 26)
    throw std::invalid_argument("exp_primitive_zw: j_max must lie in [4, 26]");
  Timer timer;
  ExperimentReport r = make_report("primitive_zw", ctx);
  r.param("family", w.kind_name());
  r.param("beta", w.beta);
  r.param("a", a);
  r.param("gamma", gamma);
  r.param("j_max", std::uint64_t(j_max));
  r.columns = {"J", "R_lb", "growth_exponent", "fj_norm_sq"};
  r.notes.push_back(
      "R_lb restricts the image norm to squarefree indices over the first J "
      "primes; growth_exponent = log R / (J^{1-a} (log J)^{-a})");

  const auto primes = first_primes(j_max);
  const double w2 = weights::weight_prime_power(w, 1);
  const double alpha = std::sqrt(w2);
  const auto& kr = kernels::active();

  for (int J = 4; J <= j_max; ++J) {
    const std::size_t size = std::size_t(1) << J;
    std::vector<std::uint64_t> ps(primes.begin(), primes.begin() + J);
    const std::vector<double> L = squarefree::subset_log_table(ps);

    std::vector<double> apow(J + 1), wpow(J + 1);
    apow[0] = wpow[0] = 1.0;
    for (int k = 1; k <= J; ++k) {
      apow[k] = apow[k - 1] * alpha;
      wpow[k] = wpow[k - 1] * w2;
    }

    std::vector<double> c(size);
    c[0] = 1.0;
    constexpr std::size_t CH = std::size_t(1) << 14;
    std::vector<double> t1(CH), t2(CH);
    for (std::size_t s0 = 1; s0 < size; s0 += CH) {
      const std::size_t cnt = std::min(CH, size - s0);
      for (std::size_t i = 0; i < cnt; ++i) t1[i] = -a * L[s0 + i];
      kr.vexp(t1.data(), t1.data(), cnt);
      kr.vlog(t2.data(), L.data() + s0, cnt);
      for (std::size_t i = 0; i < cnt; ++i) t2[i] *= -gamma;
      kr.vexp(t2.data(), t2.data(), cnt);
      for (std::size_t i = 0; i < cnt; ++i)
        c[s0 + i] = apow[std::popcount(s0 + i)] * t1[i] * t2[i];
    }
    squarefree::zeta_transform(c);

    // numerator^2 = sum_{S != empty} (zeta(c)[S] / L_S)^2: the alpha^|S|
    // in A_S cancels against w_S = w2^|S|.
    Kahan num, fj;
    for (std::size_t s = 1; s < size; ++s) {
      const double v = c[s] / L[s];
      num.accum(v * v);
    }
    for (std::size_t s = 0; s < size; ++s) {
      const int k = std::popcount(s);
      fj.accum(wpow[k] / wpow[k]);  // |a_S|^2 / w_S, exactly 1 per subset
    }
    const double R = std::sqrt(std::ldexp(num.s, -J));
    const double growth =
        std::log(R) * std::pow(std::log(double(J)), a) / std::pow(double(J), 1.0 - a);
    r.add_row({double(J), R, growth, fj.s});
  }
  r.wall_time_s = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// 2-homogeneous sharpness

ExperimentReport exp_homo_sharpness(const WeightFamily& w, double eps,
                                    std::span<const double> x_ladder,
                                    const RunContext& ctx) {
  if (!(eps > 0.0))
    throw std::invalid_argument("exp_homo_sharpness: eps must be > 0");
  if (x_ladder.empty())
    throw std::invalid_argument("exp_homo_sharpness: empty ladder");
  Timer timer;
  ExperimentReport r = make_report("homo_sharpness", ctx);
  r.param("family", w.kind_name());
  r.param("beta", w.beta);
  r.param("eps", eps);
  r.columns = {"x",        "window_size",     "quotient_lb",
               "trend",    "omega_sq_sum",    "omega_sq_formula"};
  r.notes.push_back(
      "auxiliary prime q ~ e^x enters only through log q = x and w_q = w_2; "
      "trend = quotient_lb / (log x)^eps");

  const double w2 = weights::weight_prime_power(w, 1);
  for (double x : x_ladder) {
    if (!(x > 4.0))
      throw std::invalid_argument("exp_homo_sharpness: x must exceed 4");
    std::vector<double> lp, cp;
    arith::for_each_prime(std::uint64_t(x), [&](std::uint64_t p) {
      if (double(p) > x / 2.0 && double(p) <= x) {
        const double lpj = std::log(double(p));
        lp.push_back(lpj);
        cp.push_back((lpj + x) * std::pow(std::log(lpj + x), 1.0 + eps / 2.0) /
                     double(p));
      }
    });
    const int Nw = int(lp.size());
    if (Nw == 0)
      throw std::invalid_argument("exp_homo_sharpness: empty prime window");
    if (Nw > 26)
      throw std::invalid_argument(
          "exp_homo_sharpness: window has more than 26 primes");

    Kahan quot;
    std::uint64_t omega_sq = 0;
    // subset DFS carrying (|S|, log n_S, sum of c_p over S)
    auto rec = [&](auto&& self, int j0, int k, double L, double t) -> void {
      if (k > 0) {
        const double denom = (x + L) * (x + L);
        quot.accum(t * t / denom);
        omega_sq += std::uint64_t(k) * std::uint64_t(k);
      }
      for (int j = j0; j < Nw; ++j) self(self, j + 1, k + 1, L + lp[j], t + cp[j]);
    };
    rec(rec, 0, 0, 0.0, 0.0);

    const double quotient =
        std::sqrt(std::ldexp(quot.s, -Nw)) / w2;
    const double formula =
        double(Nw) * double(Nw + 1) * std::ldexp(1.0, Nw - 2);
    r.add_row({x, double(Nw), quotient, quotient / std::pow(std::log(x), eps),
               double(omega_sq), formula});
  }
  r.wall_time_s = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// h_j prime sums

ExperimentReport exp_hj(int j, double delta, double eta,
                        std::span<const double> sigma_prime_ladder,
                        std::uint64_t prime_limit, bool tail_model,
                        const RunContext& ctx) {
  if (j < 1 || j > 3) throw std::invalid_argument("exp_hj: j must be 1, 2 or 3");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("exp_hj: need 0 < delta < 1");
  if (!(eta > 0.0)) throw std::invalid_argument("exp_hj: need eta > 0");
  if (sigma_prime_ladder.empty())
    throw std::invalid_argument("exp_hj: empty ladder");
  for (double sp : sigma_prime_ladder)
    if (!(sp > (j == 2 ? 3.0 : 1.0)))
      throw std::invalid_argument("exp_hj: sigma' too small for surrogate");
  if (prime_limit < 100)
    throw std::invalid_argument("exp_hj: prime_limit too small");

  Timer timer;
  RunContext c2 = ctx;
  c2.prime_limit = prime_limit;
  ExperimentReport r = make_report("hj", c2);
  r.param("j", std::uint64_t(j));
  r.param("delta", delta);
  r.param("eta", eta);
  r.param("prime_limit", prime_limit);
  r.param("tail_model", tail_model ? "on" : "off");
  r.columns = {"sigma_prime", "prime_sum", "tail_estimate",
               "total",       "surrogate", "ratio",
               "tail_share"};
  r.notes.push_back(
      "tail_estimate integrates the logarithmic-integral prime density "
      "beyond prime_limit; sums start at p = 3");

  const std::size_t ns = sigma_prime_ladder.size();
  std::vector<double> sigma(ns);
  for (std::size_t i = 0; i < ns; ++i) sigma[i] = 1.0 + 1.0 / sigma_prime_ladder[i];

  const auto& kr = kernels::active();
  std::vector<Kahan> acc(ns);
  constexpr std::size_t B = 16384;
  std::vector<double> pbuf;
  pbuf.reserve(B);
  std::vector<double> lp(B), llp(B), shape(B);
  auto flush = [&] {
    const std::size_t cnt = pbuf.size();
    if (cnt == 0) return;
    kr.vlog(lp.data(), pbuf.data(), cnt);
    kr.vlog(llp.data(), lp.data(), cnt);
    switch (j) {
      case 1:
        kr.vlog(shape.data(), llp.data(), cnt);
        for (std::size_t i = 0; i < cnt; ++i) shape[i] *= -delta;
        kr.vexp(shape.data(), shape.data(), cnt);
        break;
      case 2:
        std::copy(llp.begin(), llp.begin() + cnt, shape.begin());
        break;
      case 3:
        kr.vlog(shape.data(), llp.data(), cnt);
        for (std::size_t i = 0; i < cnt; ++i) shape[i] *= -eta;
        kr.vexp(shape.data(), shape.data(), cnt);
        for (std::size_t i = 0; i < cnt; ++i) shape[i] *= lp[i];
        break;
    }
    for (std::size_t i = 0; i < ns; ++i)
      acc[i].accum(kr.sum_exp(shape.data(), lp.data(), cnt, -sigma[i]));
    pbuf.clear();
  };
  arith::for_each_prime(prime_limit, [&](std::uint64_t p) {
    if (p < 3) return;
    pbuf.push_back(double(p));
    if (pbuf.size() == B) flush();
  });
  flush();

  const double v0 = std::log(double(prime_limit));
  for (std::size_t i = 0; i < ns; ++i) {
    const double sp = sigma_prime_ladder[i];
    const double chi = sigma[i] - 1.0;
    double tail = 0.0;
    if (tail_model) {
      auto integrand = [&](double v) {
        switch (j) {
          case 1:
            return std::pow(std::log(v), -delta) * std::exp(-chi * v) / v;
          case 2:
            return std::log(v) * std::exp(-chi * v) / v;
          default:
            return std::pow(std::log(v), -eta) * std::exp(-chi * v);
        }
      };
      quad::QuadratureSpec qs = ctx.quad;
      qs.absolute_tolerance = std::min(qs.absolute_tolerance, 1e-9);
      tail = quad::integrate_or_throw(integrand, v0, v0 + 80.0 / chi, qs);
    }
    double surrogate;
    switch (j) {
      case 1:
        surrogate = std::pow(std::log(sp), 1.0 - delta);
        break;
      case 2:
        surrogate = std::log(std::log(sp));
        break;
      default:
        surrogate = sp * std::pow(std::log(sp), -eta);
        break;
    }
    const double total = acc[i].s + tail;
    r.add_row({sp, acc[i].s, tail, total, surrogate, total / surrogate,
               total > 0.0 ? tail / total : 0.0});
  }
  r.wall_time_s = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// triple sum dichotomy

namespace {

// Summand over primes p1,p2,p3 >= 3:
//   u(p1) v(p2) (log p3)^2 / (p3 (loglog p3)^{2 eta} (log p1p2p3)^2)
// with u(p) = 1/(p (loglog p)^{2 delta}), v(p) = 1/(p (loglog p)^2).
// The p3 sum S3 and the p2 aggregation W are smooth in the accumulated
// log, so both are tabulated on uniform grids and interpolated (4-point
// Lagrange); below the grid threshold the sums are evaluated directly.
struct TripleSumEngine {
  std::vector<double> p, lp, u, v, a3;

  TripleSumEngine(double delta, double eta, double pmax) {
    std::vector<double> raw;
    arith::for_each_prime(std::uint64_t(pmax), [&](std::uint64_t q) {
      if (q >= 3) raw.push_back(double(q));
    });
    const std::size_t n = raw.size();
    p = std::move(raw);
    lp.resize(n);
    u.resize(n);
    v.resize(n);
    a3.resize(n);
    const auto& kr = kernels::active();
    kr.vlog(lp.data(), p.data(), n);
    std::vector<double> llp(n);
    kr.vlog(llp.data(), lp.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = 1.0 / (p[i] * std::pow(llp[i], 2.0 * delta));
      v[i] = 1.0 / (p[i] * llp[i] * llp[i]);
      a3[i] = lp[i] * lp[i] / (p[i] * std::pow(llp[i], 2.0 * eta));
    }
  }

  // 4-point Lagrange interpolation on a padded uniform grid
  struct Grid {
    double lo, h;
    std::vector<double> y;  // node i at lo + (i-1) h, i = 0..m+2
    double operator()(double xq) const {
      double x = (xq - lo) / h;
      std::size_t k = std::size_t(std::max(0.0, std::floor(x)));
      if (k > y.size() - 4) k = y.size() - 4;
      const double f = x - double(k);
      const double fm = f + 1.0, f1 = f - 1.0, f2 = f - 2.0;
      const double c0 = -f * f1 * f2 / 6.0;
      const double c1 = fm * f1 * f2 / 2.0;
      const double c2 = -fm * f * f2 / 2.0;
      const double c3 = fm * f * f1 / 6.0;
      return c0 * y[k] + c1 * y[k + 1] + c2 * y[k + 2] + c3 * y[k + 3];
    }
  };

  double s3_direct(double L, std::size_t cnt) const {
    return kernels::active().sum_pow(a3.data(), lp.data(), cnt, L, -2.0);
  }

  double eval(double P, bool reverse, int threads = 1) const {
    const std::size_t cnt =
        std::upper_bound(p.begin(), p.end(), P) - p.begin();
    if (cnt == 0) return 0.0;

    if (cnt < 512) {  // direct evaluation, no grids
      Kahan s;
      for (std::size_t ii = 0; ii < cnt; ++ii) {
        const std::size_t i = reverse ? cnt - 1 - ii : ii;
        Kahan wsum;
        for (std::size_t jj = 0; jj < cnt; ++jj)
          wsum.accum(v[jj] * s3_direct(lp[i] + lp[jj], cnt));
        s.accum(u[i] * wsum.s);
      }
      return s.s;
    }

    const double lmin = lp[0], lmax = lp[cnt - 1];
    Grid s3;
    {
      const std::size_t m = 4096;
      s3.lo = 2.0 * lmin;
      s3.h = (2.0 * lmax - 2.0 * lmin) / double(m - 1);
      s3.y.resize(m + 3);
      par::for_chunks(m + 3, 256, threads,
                      [&](std::size_t a, std::size_t b, std::size_t) {
        for (std::size_t i = a; i < b; ++i)
          s3.y[i] = s3_direct(s3.lo + (double(i) - 1.0) * s3.h, cnt);
      });
    }
    Grid wgrid;
    {
      const std::size_t m = 2048;
      wgrid.lo = lmin;
      wgrid.h = (lmax - lmin) / double(m - 1);
      wgrid.y.resize(m + 3);
      for (std::size_t i = 0; i < m + 3; ++i) {
        const double l1 = wgrid.lo + (double(i) - 1.0) * wgrid.h;
        Kahan ws;
        for (std::size_t jj = 0; jj < cnt; ++jj)
          ws.accum(v[jj] * s3(l1 + lp[jj]));
        wgrid.y[i] = ws.s;
      }
    }
    Kahan s;
    for (std::size_t ii = 0; ii < cnt; ++ii) {
      const std::size_t i = reverse ? cnt - 1 - ii : ii;
      s.accum(u[i] * wgrid(lp[i]));
    }
    return s.s;
  }
};

}  // namespace

double triple_sum_value(double delta, double eta, double P,
                        bool reverse_order) {
  TripleSumEngine engine(delta, eta, P);
  return engine.eval(P, reverse_order);
}

ExperimentReport exp_triple_sum(double delta, double eta,
                                std::span<const double> p_ladder,
                                const RunContext& ctx) {
  if (!(delta > 0.0) || !(eta > 0.0))
    throw std::invalid_argument("exp_triple_sum: delta, eta must be > 0");
  if (p_ladder.empty())
    throw std::invalid_argument("exp_triple_sum: empty ladder");
  for (std::size_t i = 0; i + 1 < p_ladder.size(); ++i)
    if (!(p_ladder[i] < p_ladder[i + 1]))
      throw std::invalid_argument("exp_triple_sum: ladder must ascend");
  Timer timer;
  ExperimentReport r = make_report("triple_sum", ctx);
  r.param("delta", delta);
  r.param("eta", eta);
  r.columns = {"P", "S", "delta_S", "ratio_prev"};
  r.notes.push_back(
      "S(P) sums over primes 3 <= p1,p2,p3 <= P; the inner p3 sum is cached "
      "on a uniform grid in log(p1 p2) and interpolated");

  TripleSumEngine engine(delta, eta, p_ladder.back());
  double prev = 0.0;
  for (double P : p_ladder) {
    const double S = engine.eval(P, false, ctx.threads);
    r.add_row({P, S, prev == 0.0 ? 0.0 : S - prev,
               prev == 0.0 ? 0.0 : S / prev});
    prev = S;
  }
  r.wall_time_s = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// Hankel vs Volterra contrast

ExperimentReport exp_hankel_vs_volterra(const WeightFamily& w, double a,
                                        std::span<const std::uint32_t> n_ladder,
                                        const RunContext& ctx) {
  if (!(a >= 0.5 && a < 1.0))
    throw std::invalid_argument("exp_hankel_vs_volterra: need 1/2 <= a < 1");
  if (n_ladder.empty())
    throw std::invalid_argument("exp_hankel_vs_volterra: empty ladder");
  for (std::size_t i = 0; i + 1 < n_ladder.size(); ++i)
    if (!(n_ladder[i] < n_ladder[i + 1]))
      throw std::invalid_argument("exp_hankel_vs_volterra: ladder must ascend");
  if (n_ladder.front() < 4)
    throw std::invalid_argument("exp_hankel_vs_volterra: N must be >= 4");
  Timer timer;
  ExperimentReport r = make_report("hankel_volterra", ctx);
  const double delta = weights::delta_exponent(w);
  const double c = delta + 1.0;
  r.param("family", w.kind_name());
  r.param("beta", w.beta);
  r.param("a", a);
  r.param("delta", delta);
  r.columns = {"N",
               "volterra_norm_lb",
               "hankel_norm_lb",
               "volterra_growth",
               "hankel_growth"};
  r.notes.push_back(
      "section norms are lower bounds of the operator/form norms; growth "
      "columns are the ratios to the previous ladder rung");
  r.tolerances.emplace_back("power_iteration_tol_volterra", 1e-10);
  r.tolerances.emplace_back("power_iteration_tol_hankel", 1e-7);

  const std::uint32_t n_max = n_ladder.back();
  const auto wt = weights::weight_table(w, n_max);
  DirichletSeries g(n_max);
  for (std::uint32_t k = 2; k <= n_max; ++k)
    g.set(k, wt[k] * std::pow(double(k), -a) /
                 std::pow(std::log(double(k)), c));

  double prev_v = 0.0, prev_h = 0.0;
  for (std::uint32_t N : n_ladder) {
    const DirichletSeries gN = series::partial_sum(g, N);
    const auto vol = operators::build_volterra_section(w, gN, N);
    const auto sv =
        operators::largest_singular_value(vol, 1e-10, 20000, ctx.seed);
    const auto han = operators::power_log_hankel(w, a, c, N, true, ctx.threads);
    const auto sh = operators::largest_singular_value(han, 1e-7, 400, ctx.seed);
    r.add_row({double(N), sv.value, sh.value,
               prev_v == 0.0 ? 0.0 : sv.value / prev_v,
               prev_h == 0.0 ? 0.0 : sh.value / prev_h});
    prev_v = sv.value;
    prev_h = sh.value;
  }
  r.wall_time_s = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// psi symbol partial sums

ExperimentReport exp_psi_symbol(double lambda,
                                std::span<const double> sigma_ladder,
                                std::uint64_t N, const RunContext& ctx) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw std::invalid_argument("exp_psi_symbol: need 0 < lambda <= 1");
  if (sigma_ladder.empty() || sigma_ladder.size() > 8)
    throw std::invalid_argument("exp_psi_symbol: ladder must have 1..8 entries");
  for (double s : sigma_ladder)
    if (!(s > 0.0 && s < 1.0))
      throw std::invalid_argument("exp_psi_symbol: sigma must lie in (0,1)");
  if (N < 1000) throw std::invalid_argument("exp_psi_symbol: N too small");
  Timer timer;
  ExperimentReport r = make_report("psi_symbol", ctx);
  r.param("lambda", lambda);
  r.param("N", N);
  r.columns = {"sigma", "S", "band_value", "surrogate", "tail_share_est"};
  r.notes.push_back(
      "band_value = sigma log S / lambda; tail_share_est extrapolates the "
      "dyadic increments of the partial sums geometrically");
  r.tolerances.emplace_back("tail_share_max", 0.01);

  const std::size_t ns = sigma_ladder.size();
  std::vector<std::uint32_t> primes;
  arith::for_each_prime(N, [&](std::uint64_t p) {
    primes.push_back(std::uint32_t(p));
  });
  const std::size_t np = primes.size();

  // factors[i][j] = psi(p_j) p_j^{-sigma_i} = lambda log p_j p_j^{-(1+sigma_i)}
  const auto& kr = kernels::active();
  std::vector<double> pd(np), lpd(np);
  for (std::size_t jj = 0; jj < np; ++jj) pd[jj] = double(primes[jj]);
  kr.vlog(lpd.data(), pd.data(), np);
  std::vector<std::vector<double>> factors(ns, std::vector<double>(np));
  for (std::size_t i = 0; i < ns; ++i) {
    auto& f = factors[i];
    for (std::size_t jj = 0; jj < np; ++jj) f[jj] = -(1.0 + sigma_ladder[i]) * lpd[jj];
    kr.vexp(f.data(), f.data(), np);
    for (std::size_t jj = 0; jj < np; ++jj) f[jj] *= lambda * lpd[jj];
  }

  const std::uint64_t n4 = N / 4, n2 = N / 2;
  std::array<std::vector<Kahan>, 3> buckets;
  for (auto& b : buckets) b.assign(ns, Kahan{});

  using Vals = std::array<double, 8>;
  auto rec = [&](auto&& self, std::uint64_t n, std::size_t j0,
                 const Vals& vals) -> void {
    auto& b = buckets[n <= n4 ? 0 : (n <= n2 ? 1 : 2)];
    for (std::size_t i = 0; i < ns; ++i) b[i].accum(vals[i]);
    for (std::size_t jj = j0; jj < np; ++jj) {
      const std::uint64_t p = primes[jj];
      if (p > N / n) break;
      Vals child = vals;
      for (std::size_t i = 0; i < ns; ++i) child[i] *= factors[i][jj];
      self(self, n * p, jj, child);
    }
  };
  Vals one{};
  for (std::size_t i = 0; i < ns; ++i) one[i] = 1.0;
  rec(rec, 1, 0, one);

  for (std::size_t i = 0; i < ns; ++i) {
    const double sigma = sigma_ladder[i];
    const double s_n4 = buckets[0][i].s;
    const double d1 = buckets[1][i].s;
    const double d2 = buckets[2][i].s;
    const double S = s_n4 + d1 + d2;
    double share;
    if (d1 <= 0.0 || d2 <= 0.0) {
      share = 0.0;  // support exhausted below N/4
    } else {
      const double q = d2 / d1;
      if (q >= 0.99)
        throw NumericFailure(
            "exp_psi_symbol: dyadic increments not contracting at sigma=" +
            report::format_g17(sigma) + "; increase N");
      share = d2 * q / (1.0 - q) / S;
    }
    if (share > 0.01)
      throw NumericFailure(
          "exp_psi_symbol: estimated truncation tail share " +
          report::format_g17(share) + " exceeds 1% at sigma=" +
          report::format_g17(sigma) + "; increase N");
    r.add_row({sigma, S, sigma * std::log(S) / lambda,
               std::exp(lambda / sigma), share});
  }
  r.wall_time_s = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// two-prime counterexample: divergent coefficient sums

ExperimentReport exp_two_prime(const WeightFamily& w,
                               std::span<const std::uint64_t> m_ladder,
                               const RunContext& ctx) {
  if (m_ladder.empty())
    throw std::invalid_argument("exp_two_prime: empty ladder");
  for (std::size_t i = 0; i + 1 < m_ladder.size(); ++i)
    if (!(m_ladder[i] < m_ladder[i + 1]))
      throw std::invalid_argument("exp_two_prime: ladder must ascend");
  if (m_ladder.front() < 10)
    throw std::invalid_argument("exp_two_prime: M must be >= 10");
  Timer timer;
  ExperimentReport r = make_report("two_prime", ctx);
  r.param("family", w.kind_name());
  r.param("beta", w.beta);
  r.columns = {"M", "partial_sum", "loglog_ratio"};
  r.notes.push_back(
      "partial sums of 1/((m+1) log(m+1)), the lower-bound series of the "
      "two-variable symbol; the lifted Bloch membership itself is not tested");

  const auto& kr = kernels::active();
  constexpr std::size_t B = 65536;
  std::vector<double> x(B), lx(B);
  Kahan acc;
  std::uint64_t m = 1;
  std::size_t rung = 0;
  while (rung < m_ladder.size()) {
    const std::uint64_t stop = m_ladder[rung];
    while (m <= stop) {
      const std::size_t cnt = std::size_t(std::min<std::uint64_t>(B, stop - m + 1));
      for (std::size_t i = 0; i < cnt; ++i) x[i] = double(m + i + 1);
      kr.vlog(lx.data(), x.data(), cnt);
      Kahan chunk;
      for (std::size_t i = 0; i < cnt; ++i) chunk.accum(1.0 / (x[i] * lx[i]));
      acc.accum(chunk.s);
      m += cnt;
    }
    const double loglog = std::log(std::log(double(stop)));
    r.add_row({double(stop), acc.s, acc.s / loglog});
    ++rung;
  }
  r.wall_time_s = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// the 1-D radial integral bound

ExperimentReport exp_int0ld(const WeightFamily& w, double p,
                            std::span<const double> t_ladder,
                            const RunContext& ctx) {
  if (!(p >= 2.0)) throw std::invalid_argument("exp_int0ld: p must be >= 2");
  if (t_ladder.empty())
    throw std::invalid_argument("exp_int0ld: empty ladder");
  if (w.is_hardy())
    throw std::invalid_argument("exp_int0ld: radial density undefined");
  Timer timer;
  ExperimentReport r = make_report("int0ld", ctx);
  r.param("family", w.kind_name());
  r.param("beta", w.beta);
  r.param("p", p);
  r.columns = {"T", "J", "bound", "ratio", "K"};

  const double beta = w.beta;
  const double logp = std::log(p);
  for (double T : t_ladder) {
    if (!(T > 0.0 && T < 1.0))
      throw std::invalid_argument("exp_int0ld: T must lie in (0,1)");
    const double logT = std::log(T);
    const double L = -logT / (2.0 * logp);
    const double K = std::min(1.0, L);
    // Integrate in ell = log(1/r) = -logT - 2 x log p: when K = L the
    // density is singular at x = K, and only the ell variable keeps
    // floating-point resolution there. x in [0, K] maps to
    // ell in [2 log p (L - K), -logT].
    auto integrand = [&](double ell) {
      const double x = (-logT - ell) / (2.0 * logp);
      double m;
      if (w.kind == weights::Kind::DivisorPower)
        m = std::pow(ell, beta - 1.0) / std::tgamma(beta);
      else
        m = beta * std::pow(-std::expm1(-ell), beta - 1.0);
      return x * m / (2.0 * logp);
    };
    quad::QuadratureSpec qs = ctx.quad;
    qs.absolute_tolerance = std::min(qs.absolute_tolerance, 1e-12);
    qs.max_subdivisions = std::max(qs.max_subdivisions, 20000);
    const double ell_lo = 2.0 * logp * (L - K);
    const double integral =
        quad::integrate_or_throw(integrand, ell_lo, -logT, qs);
    const double J = integral / (logT * logT);
    const double bound = (beta >= 1.0 || T > 1.0 / (p * p))
                             ? weights::radial_density(w, T)
                             : weights::radial_density(w, T * p * p);
    r.add_row({T, J, bound, J / bound, K});
  }
  r.wall_time_s = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// column norms along a ladder

ExperimentReport exp_column_norms(const WeightFamily& w,
                                  const DirichletSeries& g,
                                  std::span<const std::uint64_t> n_ladder,
                                  std::uint64_t N, const RunContext& ctx) {
  if (g.support_size() == 0)
    throw std::invalid_argument("exp_column_norms: symbol must be nonzero");
  if (n_ladder.empty())
    throw std::invalid_argument("exp_column_norms: empty ladder");
  Timer timer;
  ExperimentReport r = make_report("column_norms", ctx);
  r.param("family", w.kind_name());
  r.param("beta", w.beta);
  r.param("N", N);
  r.columns = {"n", "column_norm", "colnorm_times_logn", "cumulative_sq"};

  double cum = 0.0;
  for (std::uint64_t n : n_ladder) {
    if (n < 2)
      throw std::invalid_argument("exp_column_norms: ladder entries must be >= 2");
    const double cn = operators::column_norm(w, g, n, N);
    cum += cn * cn;
    r.add_row({double(n), cn, cn * std::log(double(n)), cum});
  }
  r.wall_time_s = timer.seconds();
  return r;
}

}  // namespace dvl::experiments
