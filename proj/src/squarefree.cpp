#include "dvl/squarefree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dvl/kernels.hpp"

namespace dvl::squarefree {

std::vector<double> subset_log_table(std::span<const std::uint64_t> primes) {
  const std::size_t size = std::size_t(1) << primes.size();
  std::vector<double> logs(size, 0.0);
  std::vector<double> lp(primes.size());
  for (std::size_t j = 0; j < primes.size(); ++j)
    lp[j] = std::log(double(primes[j]));
  for (std::uint64_t s = 1; s < size; ++s)
    logs[s] = logs[s & (s - 1)] + lp[std::countr_zero(s)];
  return logs;
}

SquarefreeSeries::SquarefreeSeries(std::vector<std::uint64_t> primes)
    : J_(int(primes.size())), primes_(std::move(primes)) {
  if (J_ > 28)
    throw std::invalid_argument("SquarefreeSeries: more than 28 primes");
  for (int j = 0; j < J_; ++j) {
    if (primes_[j] < 2)
      throw std::invalid_argument("SquarefreeSeries: primes must be >= 2");
    if (j > 0 && primes_[j] <= primes_[j - 1])
      throw std::invalid_argument(
          "SquarefreeSeries: primes must be strictly increasing");
  }
  coeffs_.assign(std::size_t(1) << J_, 0.0);
  logn_ = subset_log_table(primes_);
}

void zeta_transform(std::span<double> a) {
  const auto& k = kernels::active();
  const std::size_t n = a.size();
  for (std::size_t stride = 1; stride < n; stride <<= 1)
    for (std::size_t base = 0; base < n; base += 2 * stride)
      k.add(a.data() + base + stride, a.data() + base, stride);
}

void mobius_transform(std::span<double> a) {
  const auto& k = kernels::active();
  const std::size_t n = a.size();
  for (std::size_t stride = 1; stride < n; stride <<= 1)
    for (std::size_t base = 0; base < n; base += 2 * stride)
      k.sub(a.data() + base + stride, a.data() + base, stride);
}

SquarefreeSeries subset_convolve(const SquarefreeSeries& f,
                                 const SquarefreeSeries& g) {
  if (!std::ranges::equal(f.prime_set(), g.prime_set()))
    throw std::invalid_argument("subset_convolve: prime sets differ");
  const int J = f.prime_count();
  const std::size_t size = f.size();
  const auto& kr = kernels::active();

  // popcount of every mask, reused for slicing and scatter
  std::vector<std::uint8_t> pc(size);
  for (std::size_t s = 1; s < size; ++s) pc[s] = pc[s & (s - 1)] + 1;

  auto ranked = [&](const SquarefreeSeries& x) {
    std::vector<std::vector<double>> slices(J + 1);
    for (int r = 0; r <= J; ++r) {
      slices[r].assign(size, 0.0);
      for (std::size_t s = 0; s < size; ++s)
        if (pc[s] == r) slices[r][s] = x[s];
      zeta_transform(slices[r]);
    }
    return slices;
  };
  const auto fhat = ranked(f);
  const auto ghat = ranked(g);

  SquarefreeSeries h(std::vector<std::uint64_t>(f.prime_set().begin(),
                                                f.prime_set().end()));
  std::vector<double> slice(size), tmp(size);
  for (int r = 0; r <= J; ++r) {
    std::fill(slice.begin(), slice.end(), 0.0);
    for (int i = 0; i <= r; ++i) {
      std::copy(fhat[i].begin(), fhat[i].end(), tmp.begin());
      kr.mul(tmp.data(), ghat[r - i].data(), size);
      kr.add(slice.data(), tmp.data(), size);
    }
    mobius_transform(slice);
    for (std::size_t s = 0; s < size; ++s)
      if (pc[s] == r) h[s] = slice[s];
  }
  return h;
}

void write_csv(const SquarefreeSeries& f, std::ostream& os) {
  os << "# primes:";
  for (std::uint64_t p : f.prime_set()) os << ' ' << p;
  os << "\nmask,value\n";
  char buf[64];
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (f[s] == 0.0) continue;
    std::snprintf(buf, sizeof buf, "%.17g", f[s]);
    os << s << ',' << buf << '\n';
  }
}

SquarefreeSeries read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# primes:", 0) != 0)
    throw std::invalid_argument("SquarefreeSeries CSV: missing prime header");
  std::istringstream hs(line.substr(9));
  std::vector<std::uint64_t> primes;
  std::uint64_t p;
  while (hs >> p) primes.push_back(p);
  SquarefreeSeries f(std::move(primes));
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("mask,", 0) == 0) continue;
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    const std::uint64_t mask = std::stoull(field);
    std::getline(ls, field, ',');
    if (mask >= f.size())
      throw std::invalid_argument("SquarefreeSeries CSV: mask out of range");
    f[mask] = std::stod(field);
  }
  return f;
}

}  // namespace dvl::squarefree
