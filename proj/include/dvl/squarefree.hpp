#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace dvl::squarefree {

// Real coefficients indexed by subsets of a fixed prime set {q_1..q_J},
// i.e. by the squarefree integers those primes generate. Masks are
// machine-word subsets (bit j-1 <-> q_j); log n is cached per subset so the
// underlying integers never materialize.
class SquarefreeSeries {
 public:
  explicit SquarefreeSeries(std::vector<std::uint64_t> primes);

  int prime_count() const { return J_; }
  std::size_t size() const { return coeffs_.size(); }  // 2^J
  std::span<const std::uint64_t> prime_set() const { return primes_; }

  double& operator[](std::uint64_t mask) { return coeffs_[mask]; }
  double operator[](std::uint64_t mask) const { return coeffs_[mask]; }
  std::span<double> coeffs() { return coeffs_; }
  std::span<const double> coeffs() const { return coeffs_; }

  double log_n(std::uint64_t mask) const { return logn_[mask]; }
  std::span<const double> log_table() const { return logn_; }

 private:
  int J_;
  std::vector<std::uint64_t> primes_;
  std::vector<double> coeffs_;
  std::vector<double> logn_;
};

// In-place subset-sum (zeta) transform and its inverse (Moebius); the block
// update runs through the SIMD add/sub kernels.
void zeta_transform(std::span<double> a);
void mobius_transform(std::span<double> a);

// log n for every subset of the given primes (lowest-bit recurrence).
std::vector<double> subset_log_table(std::span<const std::uint64_t> primes);

// h[S] = sum over T subset of S of f[T] * g[S \ T], via the ranked
// zeta/Moebius transform in O(J^2 2^J) time. Prime sets must match.
SquarefreeSeries subset_convolve(const SquarefreeSeries& f,
                                 const SquarefreeSeries& g);

void write_csv(const SquarefreeSeries& f, std::ostream& os);
SquarefreeSeries read_csv(std::istream& is);

}  // namespace dvl::squarefree
