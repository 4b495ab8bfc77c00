#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace pointlab::kernels::impl {

void resolvent_scalar(const Coeffs& c, const double* kappa, std::size_t n, double tol, double* f1,
                      double* f2, double* f3, std::uint8_t* pole) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = c.g3 * kappa[i];
        const double b = c.g1 / kappa[i];
        const double d = (a - c.half_minus) - b;
        const double n1 = (c.two_g2 - a) - b;
        const double n3 = (-c.two_g2 - a) - b;
        const double bound = tol * ((1.0 + std::fabs(a)) + std::fabs(b));
        // NaN denominators count as poles.
        const bool ok = std::fabs(d) >= bound;
        pole[i] = ok ? 0 : 1;
        f1[i] = ok ? n1 / d : nan;
        f3[i] = ok ? n3 / d : nan;
        f2[i] = ok ? 1.0 + c.half_plus / d : nan;
    }
}

void smatrix_scalar(const Coeffs& c, const double* k, std::size_t n, double* dre, double* dim,
                    double* lre, double* lim, double* rre, double* rim) {
    for (std::size_t i = 0; i < n; ++i) {
        const double a = c.g3 * k[i];
        const double b = c.g1 / k[i];
        const double im = a + b;
        const double n2 = c.half_minus * c.half_minus + im * im;
        const double ir = c.half_minus / n2;
        const double ii = -im / n2;
        dre[i] = c.half_plus * ir;
        dim[i] = c.half_plus * ii;
        const double y = a - b;
        // (-2 g2 + i y) / den and (2 g2 + i y) / den
        lre[i] = -c.two_g2 * ir - y * ii;
        lim[i] = -c.two_g2 * ii + y * ir;
        rre[i] = c.two_g2 * ir - y * ii;
        rim[i] = c.two_g2 * ii + y * ir;
    }
}

void phase_scalar(double g1, double g3, const double* k, std::size_t n, double* ere, double* eim,
                  double* ore, double* oim) {
    const double g1sq = g1 * g1;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = 2.0 * k[i];
        const double uu = u * u;
        const double de = uu + g1sq;
        ere[i] = (uu - g1sq) / de;
        eim[i] = -(2.0 * u * g1) / de;

        const double v = g3 * k[i];
        const double vv = v * v;
        const double dodd = 4.0 + vv;
        ore[i] = (4.0 - vv) / dodd;
        oim[i] = -(4.0 * v) / dodd;
    }
}

}  // namespace pointlab::kernels::impl
