#include "kernels_impl.hpp"

#if defined(POINTLAB_HAVE_AVX2)

#include <immintrin.h>

namespace pointlab::kernels::impl {

namespace {

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

}  // namespace

void resolvent_avx2(const Coeffs& c, const double* kappa, std::size_t n, double tol, double* f1,
                    double* f2, double* f3, std::uint8_t* pole) {
    const __m256d g1 = _mm256_set1_pd(c.g1);
    const __m256d g3 = _mm256_set1_pd(c.g3);
    const __m256d two_g2 = _mm256_set1_pd(c.two_g2);
    const __m256d neg_two_g2 = _mm256_set1_pd(-c.two_g2);
    const __m256d hm = _mm256_set1_pd(c.half_minus);
    const __m256d hp = _mm256_set1_pd(c.half_plus);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d vtol = _mm256_set1_pd(tol);
    const __m256d nan = _mm256_set1_pd(__builtin_nan(""));

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d kap = _mm256_loadu_pd(kappa + i);
        const __m256d a = _mm256_mul_pd(g3, kap);
        const __m256d b = _mm256_div_pd(g1, kap);
        const __m256d d = _mm256_sub_pd(_mm256_sub_pd(a, hm), b);
        const __m256d n1 = _mm256_sub_pd(_mm256_sub_pd(two_g2, a), b);
        const __m256d n3 = _mm256_sub_pd(_mm256_sub_pd(neg_two_g2, a), b);
        const __m256d bound = _mm256_mul_pd(vtol, _mm256_add_pd(_mm256_add_pd(one, vabs(a)), vabs(b)));
        const __m256d ok = _mm256_cmp_pd(vabs(d), bound, _CMP_GE_OQ);

        _mm256_storeu_pd(f1 + i, _mm256_blendv_pd(nan, _mm256_div_pd(n1, d), ok));
        _mm256_storeu_pd(f3 + i, _mm256_blendv_pd(nan, _mm256_div_pd(n3, d), ok));
        _mm256_storeu_pd(f2 + i, _mm256_blendv_pd(nan, _mm256_add_pd(one, _mm256_div_pd(hp, d)), ok));

        const int bits = _mm256_movemask_pd(ok);
        for (int j = 0; j < 4; ++j) pole[i + j] = (bits >> j) & 1 ? 0 : 1;
    }
    resolvent_scalar(c, kappa + i, n - i, tol, f1 + i, f2 + i, f3 + i, pole + i);
}

void smatrix_avx2(const Coeffs& c, const double* k, std::size_t n, double* dre, double* dim,
                  double* lre, double* lim, double* rre, double* rim) {
    const __m256d g1 = _mm256_set1_pd(c.g1);
    const __m256d g3 = _mm256_set1_pd(c.g3);
    const __m256d two_g2 = _mm256_set1_pd(c.two_g2);
    const __m256d neg_two_g2 = _mm256_set1_pd(-c.two_g2);
    const __m256d hm = _mm256_set1_pd(c.half_minus);
    const __m256d hp = _mm256_set1_pd(c.half_plus);
    const __m256d hm2 = _mm256_mul_pd(hm, hm);
    const __m256d sign = _mm256_set1_pd(-0.0);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d kv = _mm256_loadu_pd(k + i);
        const __m256d a = _mm256_mul_pd(g3, kv);
        const __m256d b = _mm256_div_pd(g1, kv);
        const __m256d im = _mm256_add_pd(a, b);
        const __m256d n2 = _mm256_add_pd(hm2, _mm256_mul_pd(im, im));
        const __m256d ir = _mm256_div_pd(hm, n2);
        const __m256d ii = _mm256_div_pd(_mm256_xor_pd(im, sign), n2);
        _mm256_storeu_pd(dre + i, _mm256_mul_pd(hp, ir));
        _mm256_storeu_pd(dim + i, _mm256_mul_pd(hp, ii));

        const __m256d y = _mm256_sub_pd(a, b);
        const __m256d y_ii = _mm256_mul_pd(y, ii);
        const __m256d y_ir = _mm256_mul_pd(y, ir);
        _mm256_storeu_pd(lre + i, _mm256_sub_pd(_mm256_mul_pd(neg_two_g2, ir), y_ii));
        _mm256_storeu_pd(lim + i, _mm256_add_pd(_mm256_mul_pd(neg_two_g2, ii), y_ir));
        _mm256_storeu_pd(rre + i, _mm256_sub_pd(_mm256_mul_pd(two_g2, ir), y_ii));
        _mm256_storeu_pd(rim + i, _mm256_add_pd(_mm256_mul_pd(two_g2, ii), y_ir));
    }
    smatrix_scalar(c, k + i, n - i, dre + i, dim + i, lre + i, lim + i, rre + i, rim + i);
}

void phase_avx2(double g1, double g3, const double* k, std::size_t n, double* ere, double* eim,
                double* ore, double* oim) {
    const __m256d vg1 = _mm256_set1_pd(g1);
    const __m256d vg3 = _mm256_set1_pd(g3);
    const __m256d g1sq = _mm256_set1_pd(g1 * g1);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d sign = _mm256_set1_pd(-0.0);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d kv = _mm256_loadu_pd(k + i);
        const __m256d u = _mm256_mul_pd(two, kv);
        const __m256d uu = _mm256_mul_pd(u, u);
        const __m256d de = _mm256_add_pd(uu, g1sq);
        _mm256_storeu_pd(ere + i, _mm256_div_pd(_mm256_sub_pd(uu, g1sq), de));
        const __m256d num_e = _mm256_mul_pd(_mm256_mul_pd(two, u), vg1);
        _mm256_storeu_pd(eim + i, _mm256_div_pd(_mm256_xor_pd(num_e, sign), de));

        const __m256d v = _mm256_mul_pd(vg3, kv);
        const __m256d vv = _mm256_mul_pd(v, v);
        const __m256d dodd = _mm256_add_pd(four, vv);
        _mm256_storeu_pd(ore + i, _mm256_div_pd(_mm256_sub_pd(four, vv), dodd));
        const __m256d num_o = _mm256_mul_pd(four, v);
        _mm256_storeu_pd(oim + i, _mm256_div_pd(_mm256_xor_pd(num_o, sign), dodd));
    }
    phase_scalar(g1, g3, k + i, n - i, ere + i, eim + i, ore + i, oim + i);
}

}  // namespace pointlab::kernels::impl

#endif
