#pragma once

#include <cstddef>
#include <string>

namespace dvl::kernels {

// Table of data-parallel primitives used by the numeric inner loops.
// "scalar" is the reference implementation. Other backends must agree
// exactly for the element-wise ops and to ~1e-13 relative for the
// reductions (their accumulation order differs; every backend uses
// compensated summation and is deterministic for a fixed input).
//
// Domain contracts: vexp takes x in [-708, 708]; vlog takes normal
// positive doubles; sum_pow requires l[i] + shift > 0.
struct Kernels {
  const char* name;

  void (*add)(double* y, const double* x, std::size_t n);  // y[i] += x[i]
  void (*sub)(double* y, const double* x, std::size_t n);  // y[i] -= x[i]
  void (*mul)(double* y, const double* x, std::size_t n);  // y[i] *= x[i]

  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  // Σ (re[i]^2 + im[i]^2) * invw[i]; im may be null.
  double (*norm_sq)(const double* re, const double* im, const double* invw,
                    std::size_t n);

  void (*vexp)(double* y, const double* x, std::size_t n);
  void (*vlog)(double* y, const double* x, std::size_t n);

  // Σ w[i] * (l[i] + shift)^expo
  double (*sum_pow)(const double* w, const double* l, std::size_t n,
                    double shift, double expo);
  // Σ w[i] * exp(scale * l[i])
  double (*sum_exp)(const double* w, const double* l, std::size_t n,
                    double scale);
};

const Kernels& scalar();
const Kernels* avx2();    // nullptr when the CPU lacks AVX2+FMA
const Kernels& active();  // runtime selection; env DVL_KERNEL overrides

// name: "auto", "scalar" or "avx2"; throws std::invalid_argument if the
// backend is unavailable.
void select(const std::string& name);

}  // namespace dvl::kernels
