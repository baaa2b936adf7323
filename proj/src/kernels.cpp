#include "isoperimetrix/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define ISX_HAVE_X86 1
#endif

namespace isx::kernels {
namespace {

double weighted_sum_scalar(const double* w, const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * v[i];
    return s;
}

std::size_t argmin_scalar(const double* v, std::size_t n) {
    std::size_t best = n;
    double bv = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] < bv || (best == n && v[i] == bv)) {
            bv = v[i];
            best = i;
        }
    }
    return best;
}

double min_ratio_scalar(const double* num, const double* den, std::size_t n) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (den[i] > 0.0) m = std::min(m, num[i] / den[i]);
    }
    return m;
}

std::size_t count_descents_scalar(const double* v, std::size_t n, double slack) {
    std::size_t c = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (v[i + 1] < v[i] - slack * std::max(1.0, std::fabs(v[i]))) ++c;
    }
    return c;
}

#ifdef ISX_HAVE_X86

__attribute__((target("avx2,fma"))) double weighted_sum_avx2(const double* w, const double* v,
                                                             std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(v + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i), acc0);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += w[i] * v[i];
    return s;
}

// Vector pass finds the minimum value; a scalar pass then locates its first index,
// which keeps tie-breaking identical to the reference.
__attribute__((target("avx2"))) std::size_t argmin_avx2(const double* v, std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    __m256d best = _mm256_set1_pd(inf);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(v + i);
        // NaN lanes compare false and keep the running minimum.
        __m256d lt = _mm256_cmp_pd(x, best, _CMP_LT_OQ);
        best = _mm256_blendv_pd(best, x, lt);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double m = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        if (v[i] < m) m = v[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (v[j] == m) return j;
    }
    return n;
}

__attribute__((target("avx2"))) double min_ratio_avx2(const double* num, const double* den,
                                                      std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    __m256d best = _mm256_set1_pd(inf);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d vinf = _mm256_set1_pd(inf);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(den + i);
        __m256d r = _mm256_div_pd(_mm256_loadu_pd(num + i), d);
        __m256d pos = _mm256_cmp_pd(d, zero, _CMP_GT_OQ);
        r = _mm256_blendv_pd(vinf, r, pos);
        __m256d lt = _mm256_cmp_pd(r, best, _CMP_LT_OQ);
        best = _mm256_blendv_pd(best, r, lt);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double m = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        if (den[i] > 0.0) m = std::min(m, num[i] / den[i]);
    }
    return m;
}

__attribute__((target("avx2"))) std::size_t count_descents_avx2(const double* v, std::size_t n,
                                                               double slack) {
    if (n < 2) return 0;
    const std::size_t m = n - 1;
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vs = _mm256_set1_pd(slack);
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256d a = _mm256_loadu_pd(v + i);
        __m256d b = _mm256_loadu_pd(v + i + 1);
        __m256d mag = _mm256_max_pd(one, _mm256_andnot_pd(sign, a));
        __m256d thr = _mm256_sub_pd(a, _mm256_mul_pd(vs, mag));
        __m256d lt = _mm256_cmp_pd(b, thr, _CMP_LT_OQ);
        c += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(lt)));
    }
    for (; i < m; ++i) {
        if (v[i + 1] < v[i] - slack * std::max(1.0, std::fabs(v[i]))) ++c;
    }
    return c;
}

#endif

const Table kScalar{weighted_sum_scalar, argmin_scalar, min_ratio_scalar, count_descents_scalar,
                    Isa::scalar};

#ifdef ISX_HAVE_X86
const Table kAvx2{weighted_sum_avx2, argmin_avx2, min_ratio_avx2, count_descents_avx2, Isa::avx2};
#endif

const Table* detect() {
#ifdef ISX_HAVE_X86
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
#endif
    return &kScalar;
}

}  // namespace

const Table& active() {
    static const Table* t = detect();
    return *t;
}

const Table& scalar_table() { return kScalar; }

const Table* avx2_table() {
    const Table& t = active();
    return t.isa == Isa::avx2 ? &t : nullptr;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double weighted_sum(const double* w, const double* v, std::size_t n) {
    return active().weighted_sum(w, v, n);
}
std::size_t argmin(const double* v, std::size_t n) { return active().argmin(v, n); }
double min_ratio(const double* num, const double* den, std::size_t n) {
    return active().min_ratio(num, den, n);
}
std::size_t count_descents(const double* v, std::size_t n, double slack) {
    return active().count_descents(v, n, slack);
}

}  // namespace isx::kernels
