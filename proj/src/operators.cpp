#include "dvl/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <random>
#include <stdexcept>

#include "dvl/kernels.hpp"
#include "dvl/parallel.hpp"

namespace dvl::operators {
namespace {

std::vector<double> real_coefficients(const DirichletSeries& g,
                                      const char* what) {
  for (const auto& [n, a] : g.terms())
    if (a.imag() != 0.0)
      throw std::invalid_argument(std::string(what) +
                                  ": symbol must have real coefficients");
  std::vector<double> b(g.truncation() + 1, 0.0);
  for (const auto& [n, a] : g.terms()) b[n] = a.real();
  return b;
}

}  // namespace

OperatorSection::OperatorSection(std::vector<std::uint32_t> indices,
                                 std::vector<Entry> entries)
    : indices_(std::move(indices)), entries_(std::move(entries)) {
  for (const auto& e : entries_)
    if (e.row >= indices_.size() || e.col >= indices_.size())
      throw std::invalid_argument("OperatorSection: entry outside indices");
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
}

void OperatorSection::apply(std::span<const double> x,
                            std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (const auto& e : entries_) y[e.row] += e.value * x[e.col];
}

void OperatorSection::apply_transpose(std::span<const double> x,
                                      std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (const auto& e : entries_) y[e.col] += e.value * x[e.row];
}

double OperatorSection::column_euclidean_norm(std::uint32_t col_pos) const {
  double s = 0.0;
  for (const auto& e : entries_)
    if (e.col == col_pos) s += e.value * e.value;
  return std::sqrt(s);
}

void OperatorSection::write_coordinate(std::ostream& os) const {
  char buf[64];
  for (const auto& e : entries_) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    os << indices_[e.row] << ' ' << indices_[e.col] << ' ' << buf << '\n';
  }
}

OperatorSection build_volterra_section(const WeightFamily& w,
                                       const DirichletSeries& g,
                                       std::uint32_t N) {
  if (N < 2)
    throw std::invalid_argument("build_volterra_section: N must be >= 2");
  if (!g.constant_term_free())
    throw std::invalid_argument(
        "build_volterra_section: symbol has a constant term");
  real_coefficients(g, "build_volterra_section");
  const auto wt = weights::weight_table(w, N);
  std::vector<std::uint32_t> indices(N);
  for (std::uint32_t i = 0; i < N; ++i) indices[i] = i + 1;

  std::vector<OperatorSection::Entry> entries;
  for (std::uint32_t n = 1; n <= N; ++n) {
    for (const auto& [q, b] : g.terms()) {
      if (q > N / n) break;
      const std::uint64_t m = std::uint64_t(n) * q;
      const double v = std::sqrt(wt[n] / wt[m]) * b.real() *
                       std::log(double(q)) / std::log(double(m));
      if (v != 0.0)
        entries.push_back({std::uint32_t(m - 1), n - 1, v});
    }
  }
  return OperatorSection(std::move(indices), std::move(entries));
}

OperatorSection build_hankel_section(const WeightFamily& w,
                                     const DirichletSeries& g, std::uint32_t N,
                                     bool zero_constant) {
  const std::uint32_t n0 = zero_constant ? 2 : 1;
  if (N < n0)
    throw std::invalid_argument("build_hankel_section: N too small");
  const auto wt = weights::weight_table(w, N);
  std::vector<std::uint32_t> indices;
  for (std::uint32_t n = n0; n <= N; ++n) indices.push_back(n);
  auto pos = [&](std::uint64_t n) { return std::uint32_t(n - n0); };

  std::vector<OperatorSection::Entry> entries;
  for (const auto& [k, rho] : g.terms()) {
    if (rho.imag() != 0.0)
      throw std::invalid_argument(
          "build_hankel_section: symbol must have real coefficients");
    const double wk = weights::weight(w, k);
    for (std::uint64_t m : arith::divisors(arith::trial_factorize(k))) {
      const std::uint64_t n = k / m;
      if (m < n0 || m > N || n < n0 || n > N) continue;
      const double v = std::sqrt(wt[m] * wt[n]) * rho.real() / wk;
      if (v != 0.0) entries.push_back({pos(m), pos(n), v});
    }
  }
  return OperatorSection(std::move(indices), std::move(entries));
}

double column_norm(const WeightFamily& w, const DirichletSeries& g,
                   std::uint64_t n, std::uint64_t N) {
  if (!g.constant_term_free())
    throw std::invalid_argument("column_norm: symbol has a constant term");
  const double wn = weights::weight(w, n);
  double s = 0.0;
  for (const auto& [k, b] : g.terms()) {
    if (k > N / n) break;
    const std::uint64_t nk = n * k;
    const double lk = std::log(double(k));
    const double lnk = std::log(double(nk));
    s += std::norm(b) * lk * lk / (lnk * lnk) * wn / weights::weight(w, nk);
  }
  return std::sqrt(s);
}

LinearOperator as_operator(const OperatorSection& s) {
  LinearOperator op;
  op.dim = s.dim();
  op.apply = [&s](std::span<const double> x, std::span<double> y) {
    s.apply(x, y);
  };
  op.apply_t = [&s](std::span<const double> x, std::span<double> y) {
    s.apply_transpose(x, y);
  };
  return op;
}

LinearOperator power_log_hankel(const WeightFamily& w, double a, double c,
                                std::uint32_t N, bool zero_constant,
                                int threads) {
  if (!zero_constant)
    throw std::invalid_argument(
        "power_log_hankel: only the constant-free space is supported");
  const std::uint32_t n0 = 2;
  if (N < n0) throw std::invalid_argument("power_log_hankel: N too small");
  const std::size_t dim = N - n0 + 1;
  auto state = std::make_shared<std::vector<double>>();  // phi then logs
  state->resize(2 * dim);
  {
    const auto wt = weights::weight_table(w, N);
    for (std::size_t i = 0; i < dim; ++i) {
      const double n = double(n0 + i);
      (*state)[i] = std::sqrt(wt[n0 + i]) * std::pow(n, -a);
      (*state)[dim + i] = std::log(n);
    }
  }
  LinearOperator op;
  op.dim = dim;
  op.apply = [state, dim, c, threads](std::span<const double> x,
                                      std::span<double> y) {
    const double* phi = state->data();
    const double* logs = state->data() + dim;
    std::vector<double> u(dim);
    for (std::size_t i = 0; i < dim; ++i) u[i] = phi[i] * x[i];
    const auto& k = kernels::active();
    par::for_chunks(dim, 256, threads,
                    [&](std::size_t lo, std::size_t hi, std::size_t) {
                      for (std::size_t m = lo; m < hi; ++m)
                        y[m] = phi[m] *
                               k.sum_pow(u.data(), logs, dim, logs[m], -c);
                    });
  };
  op.apply_t = op.apply;  // symmetric
  return op;
}

SvdEstimate largest_singular_value(const LinearOperator& op, double tol,
                                   int max_iters, std::uint64_t seed) {
  if (op.dim == 0) return {0.0, 0, true};
  const auto& kr = kernels::active();
  SvdEstimate best;
  best.converged = true;
  int total_iters = 0;
  for (int restart = 0; restart < 2; ++restart) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ull * std::uint64_t(restart));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> v(op.dim), av(op.dim), atav(op.dim);
    for (auto& x : v) x = unif(rng);
    double nv = std::sqrt(kr.dot(v.data(), v.data(), v.size()));
    for (auto& x : v) x /= nv;

    double sigma = 0.0, prev = -1.0;
    bool converged = false;
    int stall = 0;
    int it = 0;
    for (; it < max_iters; ++it) {
      op.apply(v, av);
      op.apply_t(av, atav);
      const double s2 = kr.dot(v.data(), atav.data(), v.size());
      sigma = std::sqrt(std::max(0.0, s2));
      if (sigma == 0.0) {
        converged = true;
        break;
      }
      if (std::fabs(sigma - prev) <= tol * std::max(sigma, 1e-300)) {
        if (++stall >= 2) {
          converged = true;
          ++it;
          break;
        }
      } else {
        stall = 0;
      }
      prev = sigma;
      const double nw = std::sqrt(kr.dot(atav.data(), atav.data(), atav.size()));
      if (nw == 0.0) {
        converged = true;
        break;
      }
      for (std::size_t i = 0; i < op.dim; ++i) v[i] = atav[i] / nw;
    }
    total_iters += it;
    best.value = std::max(best.value, sigma);
    best.converged = best.converged && converged;
  }
  best.iterations = total_iters;
  return best;
}

SvdEstimate largest_singular_value(const OperatorSection& s, double tol,
                                   int max_iters, std::uint64_t seed) {
  return largest_singular_value(as_operator(s), tol, max_iters, seed);
}

}  // namespace dvl::operators
