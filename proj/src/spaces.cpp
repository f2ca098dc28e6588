#include "dvl/spaces.hpp"

#include <cmath>
#include <stdexcept>

#include "dvl/kernels.hpp"

namespace dvl::spaces {

double norm_h2w(const WeightFamily& w, const DirichletSeries& f) {
  const auto terms = f.terms();
  std::vector<double> re(terms.size()), im(terms.size()), invw(terms.size());
  bool complex_support = false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    re[i] = terms[i].second.real();
    im[i] = terms[i].second.imag();
    complex_support |= im[i] != 0.0;
    invw[i] = 1.0 / weights::weight(w, terms[i].first);
  }
  const double s = kernels::active().norm_sq(
      re.data(), complex_support ? im.data() : nullptr, invw.data(),
      terms.size());
  return std::sqrt(s);
}

Complex inner_h2w(const WeightFamily& w, const DirichletSeries& f,
                  const DirichletSeries& g) {
  // merge the sorted supports
  const auto ft = f.terms();
  const auto gt = g.terms();
  Complex s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ft.size() && j < gt.size()) {
    if (ft[i].first < gt[j].first) {
      ++i;
    } else if (gt[j].first < ft[i].first) {
      ++j;
    } else {
      s += ft[i].second * std::conj(gt[j].second) /
           weights::weight(w, ft[i].first);
      ++i;
      ++j;
    }
  }
  return s;
}

KernelValue kernel_value(const WeightFamily& w, Complex s, Complex u,
                         std::uint64_t N) {
  const Complex z = s + std::conj(u);
  const double x = z.real();
  if (!(x > 1.0))
    throw std::domain_error("kernel_value: Re(s + conj(u)) must exceed 1");
  if (N < 1) throw std::invalid_argument("kernel_value: N must be >= 1");

  const auto wt = weights::weight_table(w, static_cast<std::uint32_t>(N));
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  for (std::uint64_t n = 1; n <= N; ++n) {
    const Complex term = wt[n] * std::exp(-z * std::log(double(n)));
    double y = term.real() - cr;
    double t = sr + y;
    cr = (t - sr) - y;
    sr = t;
    y = term.imag() - ci;
    t = si + y;
    ci = (t - si) - y;
    si = t;
  }

  // tail <= c x int_N^inf (log t)^delta t^-x dt via W(t) <= c t (log t)^delta
  const double c = weights::chebyshev_upper_constant(w);
  const double delta = weights::delta_exponent(w);
  const double v0 = std::log(double(N));
  const double span = 80.0 / (x - 1.0);
  const double integral = quad::integrate_or_throw(
      [&](double v) {
        return std::pow(v, delta) * std::exp(-(x - 1.0) * v);
      },
      v0, v0 + span, {1e-14, 20000});
  return {Complex{sr, si}, c * x * integral};
}

double littlewood_paley_i2(const WeightFamily& w, const DirichletSeries& f,
                           const quad::QuadratureSpec& spec) {
  double total = std::norm(f.at(1));
  for (const auto& [n, a] : f.terms()) {
    if (n < 2) continue;
    const double ln = std::log(double(n));
    const double qn = quad::integrate_semi_infinite_or_throw(
        [&](double y) { return y * std::exp(-2.0 * y * ln); }, 0.0, spec);
    total += 4.0 * std::norm(a) / weights::weight(w, n) * ln * ln * qn;
  }
  return total;
}

double bloch_norm_estimate(const DirichletSeries& g, double theta,
                           const Grid& grid, std::uint64_t N) {
  if (grid.sigmas.empty() || grid.ts.empty())
    throw std::invalid_argument("bloch_norm_estimate: empty grid");
  const DirichletSeries gp = series::derivative(
      series::partial_sum(g, std::min<std::uint64_t>(N, g.truncation())));
  double best = 0.0;
  for (double sigma : grid.sigmas) {
    if (!(sigma > theta))
      throw std::invalid_argument(
          "bloch_norm_estimate: grid sigma must exceed theta");
    for (double t : grid.ts) {
      const double v =
          (sigma - theta) * std::abs(series::evaluate(gp, {sigma, t}));
      best = std::max(best, v);
    }
  }
  return best;
}

}  // namespace dvl::spaces
