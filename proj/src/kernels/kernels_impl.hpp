#pragma once

#include <cstddef>
#include <cstdint>

namespace pointlab::kernels::impl {

// Coefficients shared by all resolvent / S-matrix kernels.
struct Coeffs {
    double g1, g3;
    double two_g2;
    double half_minus;  // (4 - g1 g3 + g2^2) / 2
    double half_plus;   // (4 + g1 g3 - g2^2) / 2
};

inline Coeffs make_coeffs(double g1, double g2, double g3) {
    return {g1, g3, 2.0 * g2, 0.5 * (4.0 - g1 * g3 + g2 * g2), 0.5 * (4.0 + g1 * g3 - g2 * g2)};
}

void resolvent_scalar(const Coeffs& c, const double* kappa, std::size_t n, double tol, double* f1,
                      double* f2, double* f3, std::uint8_t* pole);
void smatrix_scalar(const Coeffs& c, const double* k, std::size_t n, double* dre, double* dim,
                    double* lre, double* lim, double* rre, double* rim);
void phase_scalar(double g1, double g3, const double* k, std::size_t n, double* ere, double* eim,
                  double* ore, double* oim);

#if defined(POINTLAB_HAVE_AVX2)
void resolvent_avx2(const Coeffs& c, const double* kappa, std::size_t n, double tol, double* f1,
                    double* f2, double* f3, std::uint8_t* pole);
void smatrix_avx2(const Coeffs& c, const double* k, std::size_t n, double* dre, double* dim,
                  double* lre, double* lim, double* rre, double* rim);
void phase_avx2(double g1, double g3, const double* k, std::size_t n, double* ere, double* eim,
                double* ore, double* oim);
#endif

#if defined(POINTLAB_HAVE_NEON)
void resolvent_neon(const Coeffs& c, const double* kappa, std::size_t n, double tol, double* f1,
                    double* f2, double* f3, std::uint8_t* pole);
void smatrix_neon(const Coeffs& c, const double* k, std::size_t n, double* dre, double* dim,
                  double* lre, double* lim, double* rre, double* rim);
void phase_neon(double g1, double g3, const double* k, std::size_t n, double* ere, double* eim,
                double* ore, double* oim);
#endif

}  // namespace pointlab::kernels::impl
