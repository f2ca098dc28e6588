#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "dvl/series.hpp"
#include "dvl/weights.hpp"

namespace dvl::operators {

using series::DirichletSeries;
using weights::WeightFamily;

// Finite section of an operator in the orthonormal basis e_{w,n},
// compressed to the listed basis integers. Entries are stored sparsely in
// row-major order; positions refer to `indices`.
class OperatorSection {
 public:
  struct Entry {
    std::uint32_t row, col;  // positions into indices()
    double value;
  };

  OperatorSection(std::vector<std::uint32_t> indices,
                  std::vector<Entry> entries);

  std::span<const std::uint32_t> indices() const { return indices_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t dim() const { return indices_.size(); }

  void apply(std::span<const double> x, std::span<double> y) const;
  void apply_transpose(std::span<const double> x, std::span<double> y) const;
  double column_euclidean_norm(std::uint32_t col_pos) const;

  // "row col value" triples using basis integers, one per line.
  void write_coordinate(std::ostream& os) const;

 private:
  std::vector<std::uint32_t> indices_;
  std::vector<Entry> entries_;
};

// Compression P_N T_g P_N over indices 1..N: entry (m,n) =
// sqrt(w_n / w_m) b_{m/n} log(m/n) / log m whenever n | m, m/n >= 2.
// The symbol must be constant-term-free with real coefficients.
OperatorSection build_volterra_section(const WeightFamily& w,
                                       const DirichletSeries& g,
                                       std::uint32_t N);

// Multiplicative Hankel form section: entry (m,n) = sqrt(w_m w_n)
// rho_{mn} / w_{mn}, with rho the (real) coefficients of g. Indices start
// at 2 when zero_constant is set.
OperatorSection build_hankel_section(const WeightFamily& w,
                                     const DirichletSeries& g, std::uint32_t N,
                                     bool zero_constant);

// || T_g e_{w,n} || truncated to image indices <= N:
// sqrt( sum_{k>=2, nk<=N} b_k^2 (log k)^2 / (log nk)^2 * w_n / w_{nk} ).
double column_norm(const WeightFamily& w, const DirichletSeries& g,
                   std::uint64_t n, std::uint64_t N);

// Matrix-free abstraction for power iteration; apply_t may equal apply for
// symmetric operators.
struct LinearOperator {
  std::size_t dim;
  std::function<void(std::span<const double>, std::span<double>)> apply;
  std::function<void(std::span<const double>, std::span<double>)> apply_t;
};
// Borrows the section; it must outlive the returned operator.
LinearOperator as_operator(const OperatorSection& s);

// Symmetric section of the Hankel form whose symbol has coefficients
// rho_k = w_k k^{-a} / (log k)^{c} for every k >= 2 (support N^2), kept
// matrix-free: entry (m,n) = sqrt(w_m m^-2a w_n n^-2a) / (log m + log n)^c.
// threads parallelizes the row loop over a fixed chunk grid.
LinearOperator power_log_hankel(const WeightFamily& w, double a, double c,
                                std::uint32_t N, bool zero_constant,
                                int threads = 1);

struct SvdEstimate {
  double value = 0.0;  // certified lower bound of the top singular value
  int iterations = 0;
  bool converged = false;
};

// Power iteration on the normal operator A^T A with two seeded restarts;
// stops when the Rayleigh estimate stalls within tol twice in a row.
SvdEstimate largest_singular_value(const LinearOperator& op, double tol,
                                   int max_iters, std::uint64_t seed);
SvdEstimate largest_singular_value(const OperatorSection& s, double tol,
                                   int max_iters, std::uint64_t seed);

}  // namespace dvl::operators
