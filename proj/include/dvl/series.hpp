#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "dvl/arith.hpp"
#include "dvl/weights.hpp"

namespace dvl::series {

using Complex = std::complex<double>;

// Finitely supported coefficient map n -> a_n with a support bound
// (truncation). Absent indices are exactly zero; every operation below is
// exact on the stored support.
class DirichletSeries {
 public:
  explicit DirichletSeries(std::uint64_t truncation);

  std::uint64_t truncation() const { return truncation_; }
  void set(std::uint64_t n, Complex v);
  void add(std::uint64_t n, Complex v);
  Complex at(std::uint64_t n) const;
  std::span<const std::pair<std::uint64_t, Complex>> terms() const {
    return terms_;
  }
  std::size_t support_size() const { return terms_.size(); }
  bool constant_term_free() const;

 private:
  std::uint64_t truncation_;
  std::vector<std::pair<std::uint64_t, Complex>> terms_;  // sorted by n
};

// e_{w,n} = w_n^{1/2} n^{-s}
DirichletSeries basis_vector(const weights::WeightFamily& w, std::uint64_t n,
                             std::uint64_t truncation);

// Dirichlet convolution clipped to indices <= N (exact below N).
DirichletSeries convolve(const DirichletSeries& f, const DirichletSeries& g,
                         std::uint64_t N);

// a_n -> -a_n log n, constant term dropped.
DirichletSeries derivative(const DirichletSeries& f);

// Completely multiplicative coefficient twist given by values on primes.
struct CompletelyMultiplicative {
  std::map<std::uint64_t, Complex> prime_values;
  Complex at_prime(std::uint64_t p) const;  // invalid-argument when missing
  static CompletelyMultiplicative power_law(double x,
                                            std::span<const std::uint32_t> ps);
};
DirichletSeries twist(const DirichletSeries& f,
                      const CompletelyMultiplicative& chi);

DirichletSeries translate(const DirichletSeries& f, double sigma);
DirichletSeries partial_sum(const DirichletSeries& f, std::uint64_t n_prime);
DirichletSeries homogeneous_part(const DirichletSeries& f, std::uint32_t m);

Complex evaluate(const DirichletSeries& f, Complex s);

using MultiIndex = std::vector<std::uint32_t>;
std::map<MultiIndex, Complex> bohr_lift(const DirichletSeries& f,
                                        const arith::PrimeTable& table);
DirichletSeries bohr_unlift(const std::map<MultiIndex, Complex>& lifted,
                            const arith::PrimeTable& table,
                            std::uint64_t truncation);

// T_g f: coefficient at n >= 2 is (1/log n) sum_{k m = n, m >= 2} a_k b_m log m.
// Requires g without constant term.
DirichletSeries volterra_apply(const DirichletSeries& g,
                               const DirichletSeries& f, std::uint64_t N);
// T~_g f = T_g f plus the diagonal a_n / log n (n >= 2).
DirichletSeries tilde_volterra_apply(const DirichletSeries& g,
                                     const DirichletSeries& f,
                                     std::uint64_t N);

void write_csv(const DirichletSeries& f, std::ostream& os);
// truncation 0 means "largest index read"
DirichletSeries read_csv(std::istream& is, std::uint64_t truncation = 0);

}  // namespace dvl::series
