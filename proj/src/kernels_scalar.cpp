#include "dvl/kernels.hpp"

#include <cmath>

namespace dvl::kernels {
namespace {

void add_k(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += x[i];
}

void sub_k(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] -= x[i];
}

void mul_k(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= x[i];
}

struct Kahan {
  double s = 0.0, c = 0.0;
  void accum(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

double sum_k(const double* x, std::size_t n) {
  Kahan a;
  for (std::size_t i = 0; i < n; ++i) a.accum(x[i]);
  return a.s;
}

double dot_k(const double* x, const double* y, std::size_t n) {
  Kahan a;
  for (std::size_t i = 0; i < n; ++i) a.accum(x[i] * y[i]);
  return a.s;
}

double norm_sq_k(const double* re, const double* im, const double* invw,
                 std::size_t n) {
  Kahan a;
  if (im) {
    for (std::size_t i = 0; i < n; ++i)
      a.accum((re[i] * re[i] + im[i] * im[i]) * invw[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) a.accum(re[i] * re[i] * invw[i]);
  }
  return a.s;
}

void vexp_k(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(x[i]);
}

void vlog_k(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::log(x[i]);
}

double sum_pow_k(const double* w, const double* l, std::size_t n, double shift,
                 double expo) {
  Kahan a;
  for (std::size_t i = 0; i < n; ++i) a.accum(w[i] * std::pow(l[i] + shift, expo));
  return a.s;
}

double sum_exp_k(const double* w, const double* l, std::size_t n,
                 double scale) {
  Kahan a;
  for (std::size_t i = 0; i < n; ++i) a.accum(w[i] * std::exp(scale * l[i]));
  return a.s;
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k = {
      "scalar", add_k, sub_k,     mul_k,  sum_k,     dot_k,
      norm_sq_k, vexp_k, vlog_k, sum_pow_k, sum_exp_k,
  };
  return k;
}

}  // namespace dvl::kernels
