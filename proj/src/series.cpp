#include "dvl/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dvl::series {
namespace {

void check_index(std::uint64_t n, std::uint64_t truncation, const char* what) {
  if (n < 1 || n > truncation)
    throw std::invalid_argument(std::string(what) +
                                ": index outside [1, truncation]");
}

DirichletSeries from_accumulated(
    std::vector<std::pair<std::uint64_t, Complex>>& acc, std::uint64_t N) {
  std::stable_sort(acc.begin(), acc.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  DirichletSeries out(N);
  std::size_t i = 0;
  while (i < acc.size()) {
    const std::uint64_t n = acc[i].first;
    Complex v = 0.0;
    for (; i < acc.size() && acc[i].first == n; ++i) v += acc[i].second;
    if (v != Complex(0.0)) out.set(n, v);
  }
  return out;
}

}  // namespace

DirichletSeries::DirichletSeries(std::uint64_t truncation)
    : truncation_(truncation) {
  if (truncation < 1)
    throw std::invalid_argument("DirichletSeries: truncation must be >= 1");
}

void DirichletSeries::set(std::uint64_t n, Complex v) {
  check_index(n, truncation_, "DirichletSeries::set");
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), n,
      [](const auto& t, std::uint64_t k) { return t.first < k; });
  if (it != terms_.end() && it->first == n) {
    if (v == Complex(0.0))
      terms_.erase(it);
    else
      it->second = v;
  } else if (v != Complex(0.0)) {
    terms_.insert(it, {n, v});
  }
}

void DirichletSeries::add(std::uint64_t n, Complex v) { set(n, at(n) + v); }

Complex DirichletSeries::at(std::uint64_t n) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), n,
      [](const auto& t, std::uint64_t k) { return t.first < k; });
  if (it != terms_.end() && it->first == n) return it->second;
  return 0.0;
}

bool DirichletSeries::constant_term_free() const {
  return terms_.empty() || terms_.front().first >= 2;
}

DirichletSeries basis_vector(const weights::WeightFamily& w, std::uint64_t n,
                             std::uint64_t truncation) {
  DirichletSeries e(truncation);
  e.set(n, std::sqrt(weights::weight(w, n)));
  return e;
}

DirichletSeries convolve(const DirichletSeries& f, const DirichletSeries& g,
                         std::uint64_t N) {
  if (N < 1) throw std::invalid_argument("convolve: N must be >= 1");
  std::vector<std::pair<std::uint64_t, Complex>> acc;
  for (const auto& [k, a] : f.terms()) {
    if (k > N) break;
    for (const auto& [m, b] : g.terms()) {
      if (m > N / k) break;
      acc.push_back({k * m, a * b});
    }
  }
  return from_accumulated(acc, N);
}

DirichletSeries derivative(const DirichletSeries& f) {
  DirichletSeries out(f.truncation());
  for (const auto& [n, a] : f.terms())
    if (n >= 2) out.set(n, -a * std::log(double(n)));
  return out;
}

Complex CompletelyMultiplicative::at_prime(std::uint64_t p) const {
  auto it = prime_values.find(p);
  if (it == prime_values.end())
    throw std::invalid_argument("twist: missing prime value for p=" +
                                std::to_string(p));
  return it->second;
}

CompletelyMultiplicative CompletelyMultiplicative::power_law(
    double x, std::span<const std::uint32_t> ps) {
  CompletelyMultiplicative chi;
  for (std::uint32_t p : ps)
    chi.prime_values[p] = std::pow(double(p), -x);
  return chi;
}

DirichletSeries twist(const DirichletSeries& f,
                      const CompletelyMultiplicative& chi) {
  DirichletSeries out(f.truncation());
  for (const auto& [n, a] : f.terms()) {
    Complex m = 1.0;
    for (const auto& [p, e] : arith::trial_factorize(n)) {
      const Complex cp = chi.at_prime(p);
      for (std::uint32_t i = 0; i < e; ++i) m *= cp;
    }
    if (a * m != Complex(0.0)) out.set(n, a * m);
  }
  return out;
}

DirichletSeries translate(const DirichletSeries& f, double sigma) {
  DirichletSeries out(f.truncation());
  for (const auto& [n, a] : f.terms())
    out.set(n, a * std::pow(double(n), -sigma));
  return out;
}

DirichletSeries partial_sum(const DirichletSeries& f, std::uint64_t n_prime) {
  if (n_prime < 1 || n_prime > f.truncation())
    throw std::invalid_argument("partial_sum: bound outside [1, truncation]");
  DirichletSeries out(f.truncation());
  for (const auto& [n, a] : f.terms()) {
    if (n > n_prime) break;
    out.set(n, a);
  }
  return out;
}

DirichletSeries homogeneous_part(const DirichletSeries& f, std::uint32_t m) {
  DirichletSeries out(f.truncation());
  for (const auto& [n, a] : f.terms()) {
    std::uint32_t omega = 0;
    for (const auto& [p, e] : arith::trial_factorize(n)) omega += e;
    if (omega == m) out.set(n, a);
  }
  return out;
}

Complex evaluate(const DirichletSeries& f, Complex s) {
  double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
  for (const auto& [n, a] : f.terms()) {
    const Complex term = a * std::exp(-s * std::log(double(n)));
    double y = term.real() - cr;
    double t = sr + y;
    cr = (t - sr) - y;
    sr = t;
    y = term.imag() - ci;
    t = si + y;
    ci = (t - si) - y;
    si = t;
  }
  return {sr, si};
}

std::map<MultiIndex, Complex> bohr_lift(const DirichletSeries& f,
                                        const arith::PrimeTable& table) {
  std::map<MultiIndex, Complex> lifted;
  for (const auto& [n, a] : f.terms())
    lifted[arith::multi_index(n, table)] = a;
  return lifted;
}

DirichletSeries bohr_unlift(const std::map<MultiIndex, Complex>& lifted,
                            const arith::PrimeTable& table,
                            std::uint64_t truncation) {
  DirichletSeries out(truncation);
  for (const auto& [alpha, a] : lifted) {
    std::uint64_t n = 1;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      const std::uint64_t p = table.nth_prime(j + 1);
      for (std::uint32_t i = 0; i < alpha[j]; ++i) {
        if (n > truncation / p)
          throw std::invalid_argument("bohr_unlift: index exceeds truncation");
        n *= p;
      }
    }
    out.set(n, a);
  }
  return out;
}

DirichletSeries volterra_apply(const DirichletSeries& g,
                               const DirichletSeries& f, std::uint64_t N) {
  if (N < 2) throw std::invalid_argument("volterra_apply: N must be >= 2");
  if (!g.constant_term_free())
    throw std::invalid_argument("volterra_apply: symbol has a constant term");
  std::vector<std::pair<std::uint64_t, Complex>> acc;
  for (const auto& [k, a] : f.terms()) {
    if (k > N) break;
    for (const auto& [m, b] : g.terms()) {
      if (m > N / k) break;
      acc.push_back({k * m, a * b * std::log(double(m))});
    }
  }
  DirichletSeries raw = from_accumulated(acc, N);
  DirichletSeries out(N);
  for (const auto& [n, v] : raw.terms()) out.set(n, v / std::log(double(n)));
  return out;
}

DirichletSeries tilde_volterra_apply(const DirichletSeries& g,
                                     const DirichletSeries& f,
                                     std::uint64_t N) {
  DirichletSeries out = volterra_apply(g, f, N);
  for (const auto& [n, a] : f.terms()) {
    if (n < 2) continue;
    if (n > N) break;
    out.add(n, a / std::log(double(n)));
  }
  return out;
}

void write_csv(const DirichletSeries& f, std::ostream& os) {
  os << "n,re,im\n";
  char buf[64];
  for (const auto& [n, a] : f.terms()) {
    os << n << ',';
    std::snprintf(buf, sizeof buf, "%.17g", a.real());
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", a.imag());
    os << buf << '\n';
  }
}

DirichletSeries read_csv(std::istream& is, std::uint64_t truncation) {
  std::vector<std::pair<std::uint64_t, Complex>> rows;
  std::uint64_t max_n = 1;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("n,", 0) == 0) continue;  // header
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    const std::uint64_t n = std::stoull(field);
    std::getline(ls, field, ',');
    const double re = std::stod(field);
    double im = 0.0;
    if (std::getline(ls, field, ',')) im = std::stod(field);
    rows.push_back({n, Complex{re, im}});
    max_n = std::max(max_n, n);
  }
  if (truncation == 0) truncation = max_n;
  DirichletSeries out(truncation);
  for (const auto& [n, v] : rows) out.set(n, v);
  return out;
}

}  // namespace dvl::series
