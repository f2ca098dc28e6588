#include "dvl/kernels.hpp"

#include <cmath>
#include <cstdint>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#define DVL_AVX2 __attribute__((target("avx2,fma")))

namespace dvl::kernels {
namespace {

DVL_AVX2 void add_k(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(y + i);
    __m256d b = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(a, b));
  }
  for (; i < n; ++i) y[i] += x[i];
}

DVL_AVX2 void sub_k(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(y + i);
    __m256d b = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_sub_pd(a, b));
  }
  for (; i < n; ++i) y[i] -= x[i];
}

DVL_AVX2 void mul_k(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(y + i);
    __m256d b = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_mul_pd(a, b));
  }
  for (; i < n; ++i) y[i] *= x[i];
}

// Four-lane Kahan accumulator; lanes merged in fixed order at the end,
// scalar tail appended after the vector part.
struct VKahan {
  __m256d s, c;
  DVL_AVX2 VKahan() : s(_mm256_setzero_pd()), c(_mm256_setzero_pd()) {}
  DVL_AVX2 void accum(__m256d v) {
    __m256d y = _mm256_sub_pd(v, c);
    __m256d t = _mm256_add_pd(s, y);
    c = _mm256_sub_pd(_mm256_sub_pd(t, s), y);
    s = t;
  }
  DVL_AVX2 double reduce(double tail_s, double tail_c) const {
    alignas(32) double ls[4], lc[4];
    _mm256_store_pd(ls, s);
    _mm256_store_pd(lc, c);
    double rs = 0.0, rc = 0.0;
    for (int k = 0; k < 4; ++k) {
      double y = ls[k] - rc;
      double t = rs + y;
      rc = (t - rs) - y;
      rs = t;
      y = -lc[k] - rc;
      t = rs + y;
      rc = (t - rs) - y;
      rs = t;
    }
    double y = tail_s - rc;
    double t = rs + y;
    rc = (t - rs) - y;
    rs = t;
    y = -tail_c - rc;
    rs = rs + y;
    return rs;
  }
};

struct SKahan {
  double s = 0.0, c = 0.0;
  void accum(double v) {
    double y = v - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

DVL_AVX2 double sum_k(const double* x, std::size_t n) {
  VKahan a;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) a.accum(_mm256_loadu_pd(x + i));
  SKahan t;
  for (; i < n; ++i) t.accum(x[i]);
  return a.reduce(t.s, t.c);
}

DVL_AVX2 double dot_k(const double* x, const double* y, std::size_t n) {
  VKahan a;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    a.accum(_mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  SKahan t;
  for (; i < n; ++i) t.accum(x[i] * y[i]);
  return a.reduce(t.s, t.c);
}

DVL_AVX2 double norm_sq_k(const double* re, const double* im,
                          const double* invw, std::size_t n) {
  VKahan a;
  std::size_t i = 0;
  if (im) {
    for (; i + 4 <= n; i += 4) {
      __m256d r = _mm256_loadu_pd(re + i);
      __m256d m = _mm256_loadu_pd(im + i);
      __m256d q = _mm256_add_pd(_mm256_mul_pd(r, r), _mm256_mul_pd(m, m));
      a.accum(_mm256_mul_pd(q, _mm256_loadu_pd(invw + i)));
    }
    SKahan t;
    for (; i < n; ++i) t.accum((re[i] * re[i] + im[i] * im[i]) * invw[i]);
    return a.reduce(t.s, t.c);
  }
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_loadu_pd(re + i);
    a.accum(_mm256_mul_pd(_mm256_mul_pd(r, r), _mm256_loadu_pd(invw + i)));
  }
  SKahan t;
  for (; i < n; ++i) t.accum(re[i] * re[i] * invw[i]);
  return a.reduce(t.s, t.c);
}

// exp: x = k*ln2 + r with |r| <= ln2/2, exp(r) by degree-13 Taylor
// (remainder ~4e-18), scale by 2^k through the exponent field.
// Valid for |x| <= 708; inputs are clamped to that range.

constexpr double kInvLn2 = 1.4426950408889634074;
constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;

alignas(32) constexpr double kExpC[14] = {
    1.0,
    1.0,
    1.0 / 2,
    1.0 / 6,
    1.0 / 24,
    1.0 / 120,
    1.0 / 720,
    1.0 / 5040,
    1.0 / 40320,
    1.0 / 362880,
    1.0 / 3628800,
    1.0 / 39916800,
    1.0 / 479001600,
    1.0 / 6227020800.0,
};

DVL_AVX2 inline __m256d exp4(__m256d x) {
  x = _mm256_min_pd(x, _mm256_set1_pd(708.0));
  x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kInvLn2)),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Hi), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Lo), r);
  __m256d p = _mm256_set1_pd(kExpC[13]);
  for (int j = 12; j >= 0; --j)
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kExpC[j]));
  __m128i ki = _mm256_cvtpd_epi32(k);
  __m256i kl = _mm256_cvtepi32_epi64(ki);
  __m256i bits = _mm256_slli_epi64(
      _mm256_add_epi64(kl, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

// log: x = m * 2^e with m in [sqrt(2)/2, sqrt(2)); log m = 2 atanh(t),
// t = (m-1)/(m+1), odd series through t^21. Normal positive inputs only.

constexpr double kSqrt2 = 1.41421356237309504880;

DVL_AVX2 inline __m256d log4(__m256d x) {
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFll);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000ll);
  __m256i bits = _mm256_castpd_si256(x);
  __m256i raw = _mm256_srli_epi64(bits, 52);
  // exponent field to double via the 2^52 magic constant
  __m256i magic = _mm256_set1_epi64x(0x4330000000000000ll);
  __m256d e = _mm256_sub_pd(
      _mm256_castsi256_pd(_mm256_or_si256(raw, magic)),
      _mm256_set1_pd(4503599627370496.0 + 1023.0));
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
  __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));
  __m256d one = _mm256_set1_pd(1.0);
  __m256d t = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  __m256d u = _mm256_mul_pd(t, t);
  __m256d q = _mm256_set1_pd(1.0 / 21);
  q = _mm256_fmadd_pd(q, u, _mm256_set1_pd(1.0 / 19));
  q = _mm256_fmadd_pd(q, u, _mm256_set1_pd(1.0 / 17));
  q = _mm256_fmadd_pd(q, u, _mm256_set1_pd(1.0 / 15));
  q = _mm256_fmadd_pd(q, u, _mm256_set1_pd(1.0 / 13));
  q = _mm256_fmadd_pd(q, u, _mm256_set1_pd(1.0 / 11));
  q = _mm256_fmadd_pd(q, u, _mm256_set1_pd(1.0 / 9));
  q = _mm256_fmadd_pd(q, u, _mm256_set1_pd(1.0 / 7));
  q = _mm256_fmadd_pd(q, u, _mm256_set1_pd(1.0 / 5));
  q = _mm256_fmadd_pd(q, u, _mm256_set1_pd(1.0 / 3));
  q = _mm256_fmadd_pd(q, u, one);
  __m256d logm = _mm256_mul_pd(_mm256_add_pd(t, t), q);
  __m256d r = _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Hi), logm);
  return _mm256_fmadd_pd(e, _mm256_set1_pd(kLn2Lo), r);
}

DVL_AVX2 void vexp_k(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, exp4(_mm256_loadu_pd(x + i)));
  if (i < n) {
    alignas(32) double buf[4] = {0, 0, 0, 0};
    for (std::size_t j = i; j < n; ++j) buf[j - i] = x[j];
    alignas(32) double out[4];
    _mm256_store_pd(out, exp4(_mm256_load_pd(buf)));
    for (std::size_t j = i; j < n; ++j) y[j] = out[j - i];
  }
}

DVL_AVX2 void vlog_k(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, log4(_mm256_loadu_pd(x + i)));
  if (i < n) {
    alignas(32) double buf[4] = {1, 1, 1, 1};
    for (std::size_t j = i; j < n; ++j) buf[j - i] = x[j];
    alignas(32) double out[4];
    _mm256_store_pd(out, log4(_mm256_load_pd(buf)));
    for (std::size_t j = i; j < n; ++j) y[j] = out[j - i];
  }
}

DVL_AVX2 double sum_pow_k(const double* w, const double* l, std::size_t n,
                          double shift, double expo) {
  VKahan a;
  __m256d sh = _mm256_set1_pd(shift);
  __m256d ex = _mm256_set1_pd(expo);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d base = _mm256_add_pd(_mm256_loadu_pd(l + i), sh);
    __m256d p = exp4(_mm256_mul_pd(ex, log4(base)));
    a.accum(_mm256_mul_pd(p, _mm256_loadu_pd(w + i)));
  }
  SKahan t;
  for (; i < n; ++i) t.accum(w[i] * std::pow(l[i] + shift, expo));
  return a.reduce(t.s, t.c);
}

DVL_AVX2 double sum_exp_k(const double* w, const double* l, std::size_t n,
                          double scale) {
  VKahan a;
  __m256d sc = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = exp4(_mm256_mul_pd(sc, _mm256_loadu_pd(l + i)));
    a.accum(_mm256_mul_pd(p, _mm256_loadu_pd(w + i)));
  }
  SKahan t;
  for (; i < n; ++i) t.accum(w[i] * std::exp(scale * l[i]));
  return a.reduce(t.s, t.c);
}

}  // namespace

const Kernels* avx2() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return nullptr;
  static const Kernels k = {
      "avx2", add_k, sub_k,     mul_k,  sum_k,     dot_k,
      norm_sq_k, vexp_k, vlog_k, sum_pow_k, sum_exp_k,
  };
  return &k;
}

}  // namespace dvl::kernels

#else  // non-x86 hosts fall back to the scalar table

namespace dvl::kernels {
const Kernels* avx2() { return nullptr; }
}

#endif
