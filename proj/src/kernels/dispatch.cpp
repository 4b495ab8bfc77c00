#include <cmath>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"
#include "pointlab/kernels.hpp"

namespace pointlab::kernels {

namespace {

void check_sizes(std::size_t n, std::initializer_list<std::size_t> sizes) {
    for (std::size_t s : sizes) {
        if (s < n) throw InvalidArgument("kernel output span shorter than input grid");
    }
}

void check_grid(std::span<const double> grid) {
    for (double v : grid) {
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("spectral grid values must be finite and > 0");
    }
}

Backend detect() noexcept {
    if (const char* env = std::getenv("POINTLAB_SIMD"); env && std::strcmp(env, "scalar") == 0) {
        return Backend::Scalar;
    }
    if (available(Backend::Avx2)) return Backend::Avx2;
    if (available(Backend::Neon)) return Backend::Neon;
    return Backend::Scalar;
}

}  // namespace

bool available(Backend backend) noexcept {
    switch (backend) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(POINTLAB_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::Neon:
#if defined(POINTLAB_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

std::string_view name(Backend backend) noexcept {
    switch (backend) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

Backend active_backend() noexcept {
    static const Backend chosen = detect();
    return chosen;
}

void resolvent_grid(const Couplings& g, std::span<const double> kappa, double pole_tolerance,
                    ResolventOut out, Backend backend) {
    g.validate();
    check_grid(kappa);
    const std::size_t n = kappa.size();
    check_sizes(n, {out.f1.size(), out.f2.size(), out.f3.size(), out.pole.size()});
    if (!available(backend)) backend = Backend::Scalar;
    const impl::Coeffs c = impl::make_coeffs(g.g1, g.g2, g.g3);
    switch (backend) {
#if defined(POINTLAB_HAVE_AVX2)
        case Backend::Avx2:
            impl::resolvent_avx2(c, kappa.data(), n, pole_tolerance, out.f1.data(), out.f2.data(),
                                 out.f3.data(), out.pole.data());
            return;
#endif
#if defined(POINTLAB_HAVE_NEON)
        case Backend::Neon:
            impl::resolvent_neon(c, kappa.data(), n, pole_tolerance, out.f1.data(), out.f2.data(),
                                 out.f3.data(), out.pole.data());
            return;
#endif
        default:
            impl::resolvent_scalar(c, kappa.data(), n, pole_tolerance, out.f1.data(), out.f2.data(),
                                   out.f3.data(), out.pole.data());
    }
}

void smatrix_grid(const Couplings& g, std::span<const double> k, SMatrixOut out, Backend backend) {
    g.validate();
    check_grid(k);
    const std::size_t n = k.size();
    check_sizes(n, {out.diag_re.size(), out.diag_im.size(), out.lr_re.size(), out.lr_im.size(),
                    out.rr_re.size(), out.rr_im.size()});
    if (!available(backend)) backend = Backend::Scalar;
    const impl::Coeffs c = impl::make_coeffs(g.g1, g.g2, g.g3);
    auto* p = k.data();
    switch (backend) {
#if defined(POINTLAB_HAVE_AVX2)
        case Backend::Avx2:
            impl::smatrix_avx2(c, p, n, out.diag_re.data(), out.diag_im.data(), out.lr_re.data(),
                               out.lr_im.data(), out.rr_re.data(), out.rr_im.data());
            return;
#endif
#if defined(POINTLAB_HAVE_NEON)
        case Backend::Neon:
            impl::smatrix_neon(c, p, n, out.diag_re.data(), out.diag_im.data(), out.lr_re.data(),
                               out.lr_im.data(), out.rr_re.data(), out.rr_im.data());
            return;
#endif
        default:
            impl::smatrix_scalar(c, p, n, out.diag_re.data(), out.diag_im.data(), out.lr_re.data(),
                                 out.lr_im.data(), out.rr_re.data(), out.rr_im.data());
    }
}

void parity_phase_grid(double g1, double g3, std::span<const double> k, PhaseOut out, Backend backend) {
    Couplings{g1, 0.0, g3}.validate();
    check_grid(k);
    const std::size_t n = k.size();
    check_sizes(n, {out.even_re.size(), out.even_im.size(), out.odd_re.size(), out.odd_im.size()});
    if (!available(backend)) backend = Backend::Scalar;
    switch (backend) {
#if defined(POINTLAB_HAVE_AVX2)
        case Backend::Avx2:
            impl::phase_avx2(g1, g3, k.data(), n, out.even_re.data(), out.even_im.data(), out.odd_re.data(),
                             out.odd_im.data());
            return;
#endif
#if defined(POINTLAB_HAVE_NEON)
        case Backend::Neon:
            impl::phase_neon(g1, g3, k.data(), n, out.even_re.data(), out.even_im.data(), out.odd_re.data(),
                             out.odd_im.data());
            return;
#endif
        default:
            impl::phase_scalar(g1, g3, k.data(), n, out.even_re.data(), out.even_im.data(), out.odd_re.data(),
                               out.odd_im.data());
    }
}

}  // namespace pointlab::kernels
