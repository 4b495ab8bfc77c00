#include "kernels_impl.hpp"

#if defined(POINTLAB_HAVE_NEON)

#include <arm_neon.h>

namespace pointlab::kernels::impl {

void resolvent_neon(const Coeffs& c, const double* kappa, std::size_t n, double tol, double* f1,
                    double* f2, double* f3, std::uint8_t* pole) {
    const float64x2_t g1 = vdupq_n_f64(c.g1);
    const float64x2_t g3 = vdupq_n_f64(c.g3);
    const float64x2_t two_g2 = vdupq_n_f64(c.two_g2);
    const float64x2_t neg_two_g2 = vdupq_n_f64(-c.two_g2);
    const float64x2_t hm = vdupq_n_f64(c.half_minus);
    const float64x2_t hp = vdupq_n_f64(c.half_plus);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t vtol = vdupq_n_f64(tol);
    const float64x2_t nan = vdupq_n_f64(__builtin_nan(""));

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t kap = vld1q_f64(kappa + i);
        const float64x2_t a = vmulq_f64(g3, kap);
        const float64x2_t b = vdivq_f64(g1, kap);
        const float64x2_t d = vsubq_f64(vsubq_f64(a, hm), b);
        const float64x2_t n1 = vsubq_f64(vsubq_f64(two_g2, a), b);
        const float64x2_t n3 = vsubq_f64(vsubq_f64(neg_two_g2, a), b);
        const float64x2_t bound = vmulq_f64(vtol, vaddq_f64(vaddq_f64(one, vabsq_f64(a)), vabsq_f64(b)));
        const uint64x2_t ok = vcgeq_f64(vabsq_f64(d), bound);

        vst1q_f64(f1 + i, vbslq_f64(ok, vdivq_f64(n1, d), nan));
        vst1q_f64(f3 + i, vbslq_f64(ok, vdivq_f64(n3, d), nan));
        vst1q_f64(f2 + i, vbslq_f64(ok, vaddq_f64(one, vdivq_f64(hp, d)), nan));
        pole[i] = vgetq_lane_u64(ok, 0) ? 0 : 1;
        pole[i + 1] = vgetq_lane_u64(ok, 1) ? 0 : 1;
    }
    resolvent_scalar(c, kappa + i, n - i, tol, f1 + i, f2 + i, f3 + i, pole + i);
}

void smatrix_neon(const Coeffs& c, const double* k, std::size_t n, double* dre, double* dim,
                  double* lre, double* lim, double* rre, double* rim) {
    const float64x2_t g1 = vdupq_n_f64(c.g1);
    const float64x2_t g3 = vdupq_n_f64(c.g3);
    const float64x2_t two_g2 = vdupq_n_f64(c.two_g2);
    const float64x2_t neg_two_g2 = vdupq_n_f64(-c.two_g2);
    const float64x2_t hm = vdupq_n_f64(c.half_minus);
    const float64x2_t hp = vdupq_n_f64(c.half_plus);
    const float64x2_t hm2 = vmulq_f64(hm, hm);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t kv = vld1q_f64(k + i);
        const float64x2_t a = vmulq_f64(g3, kv);
        const float64x2_t b = vdivq_f64(g1, kv);
        const float64x2_t im = vaddq_f64(a, b);
        const float64x2_t n2 = vaddq_f64(hm2, vmulq_f64(im, im));
        const float64x2_t ir = vdivq_f64(hm, n2);
        const float64x2_t ii = vdivq_f64(vnegq_f64(im), n2);
        vst1q_f64(dre + i, vmulq_f64(hp, ir));
        vst1q_f64(dim + i, vmulq_f64(hp, ii));

        const float64x2_t y = vsubq_f64(a, b);
        const float64x2_t y_ii = vmulq_f64(y, ii);
        const float64x2_t y_ir = vmulq_f64(y, ir);
        vst1q_f64(lre + i, vsubq_f64(vmulq_f64(neg_two_g2, ir), y_ii));
        vst1q_f64(lim + i, vaddq_f64(vmulq_f64(neg_two_g2, ii), y_ir));
        vst1q_f64(rre + i, vsubq_f64(vmulq_f64(two_g2, ir), y_ii));
        vst1q_f64(rim + i, vaddq_f64(vmulq_f64(two_g2, ii), y_ir));
    }
    smatrix_scalar(c, k + i, n - i, dre + i, dim + i, lre + i, lim + i, rre + i, rim + i);
}

void phase_neon(double g1, double g3, const double* k, std::size_t n, double* ere, double* eim,
                double* ore, double* oim) {
    const float64x2_t vg1 = vdupq_n_f64(g1);
    const float64x2_t vg3 = vdupq_n_f64(g3);
    const float64x2_t g1sq = vdupq_n_f64(g1 * g1);
    const float64x2_t two = vdupq_n_f64(2.0);
    const float64x2_t four = vdupq_n_f64(4.0);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t kv = vld1q_f64(k + i);
        const float64x2_t u = vmulq_f64(two, kv);
        const float64x2_t uu = vmulq_f64(u, u);
        const float64x2_t de = vaddq_f64(uu, g1sq);
        vst1q_f64(ere + i, vdivq_f64(vsubq_f64(uu, g1sq), de));
        vst1q_f64(eim + i, vdivq_f64(vnegq_f64(vmulq_f64(vmulq_f64(two, u), vg1)), de));

        const float64x2_t v = vmulq_f64(vg3, kv);
        const float64x2_t vv = vmulq_f64(v, v);
        const float64x2_t dodd = vaddq_f64(four, vv);
        vst1q_f64(ore + i, vdivq_f64(vsubq_f64(four, vv), dodd));
        vst1q_f64(oim + i, vdivq_f64(vnegq_f64(vmulq_f64(four, v)), dodd));
    }
    phase_scalar(g1, g3, k + i, n - i, ere + i, eim + i, ore + i, oim + i);
}

}  // namespace pointlab::kernels::impl

#endif
