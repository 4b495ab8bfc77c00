#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "pointlab/pointcore.hpp"

// Batch evaluation of the closed forms over spectral grids. The scalar
// backend is the reference; vector backends perform the same operations in
// the same order (no fused multiply-add) and agree bit for bit.
namespace pointlab::kernels {

enum class Backend { Scalar, Avx2, Neon };

bool available(Backend backend) noexcept;
std::string_view name(Backend backend) noexcept;
// Best available backend; POINTLAB_SIMD=scalar forces the reference path.
Backend active_backend() noexcept;

// Real kappa grid. f4 equals f2 and is not stored. Pole points are flagged
// with pole[i] = 1 and get NaN in every output.
struct ResolventOut {
    std::span<double> f1, f2, f3;
    std::span<std::uint8_t> pole;
};

void resolvent_grid(const Couplings& g, std::span<const double> kappa, double pole_tolerance,
                    ResolventOut out, Backend backend = active_backend());

// Wavenumber grid. diag = S++ = S--, minus_dir = S+- (left reflection),
// plus_dir = S-+ (right reflection); split into real and imaginary parts.
struct SMatrixOut {
    std::span<double> diag_re, diag_im;
    std::span<double> lr_re, lr_im;
    std::span<double> rr_re, rr_im;
};

void smatrix_grid(const Couplings& g, std::span<const double> k, SMatrixOut out,
                  Backend backend = active_backend());

struct PhaseOut {
    std::span<double> even_re, even_im;
    std::span<double> odd_re, odd_im;
};

void parity_phase_grid(double g1, double g3, std::span<const double> k, PhaseOut out,
                       Backend backend = active_backend());

}  // namespace pointlab::kernels
