#include "pointlab/pointcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "pointlab/kernels.hpp"

namespace pointlab {

namespace {

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Same closed forms as the grid kernels, evaluated at the continuation
// kappa = -i k.
ResolventQuad rational_quad(const Couplings& g, cplx kappa, double pole_tolerance) {
    const double half_minus = 0.5 * (4.0 - g.g1 * g.g3 + g.g2 * g.g2);
    const double half_plus = 0.5 * (4.0 + g.g1 * g.g3 - g.g2 * g.g2);
    const cplx a = g.g3 * kappa;
    const cplx b = g.g1 / kappa;
    const cplx d = (a - half_minus) - b;
    const double bound = pole_tolerance * (1.0 + std::abs(a) + std::abs(b));
    if (!(std::abs(d) >= bound)) throw PoleAtSpectralPoint(std::abs(kappa));
    ResolventQuad q;
    q.f1 = ((2.0 * g.g2 - a) - b) / d;
    q.f3 = ((-2.0 * g.g2 - a) - b) / d;
    q.f2 = 1.0 + half_plus / d;
    q.f4 = q.f2;
    return q;
}

// Richardson table over h, h/2, h/4 for an expansion in powers of h.
double richardson(double coarse, double mid, double fine) {
    const double r1 = 2.0 * mid - coarse;
    const double r2 = 2.0 * fine - mid;
    return (4.0 * r2 - r1) / 3.0;
}

constexpr std::array<double, 3> kSteps{1e-3, 5e-4, 2.5e-4};

}  // namespace

void Couplings::validate() const {
    if (!std::isfinite(g1) || !std::isfinite(g2) || !std::isfinite(g3)) {
        throw InvalidArgument("couplings must be finite");
    }
}

SpectralPoint::SpectralPoint(SpectralKind kind, double value) : kind_(kind), value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidArgument("spectral value must be finite and > 0");
    }
}

cplx ResolventQuad::sector(int sx, int sxp) const {
    if (sx > 0) return sxp > 0 ? f1 : f4;
    return sxp > 0 ? f2 : f3;
}

ResolventQuad resolvent_from_couplings(const Couplings& g, SpectralPoint kappa, double pole_tolerance) {
    g.validate();
    if (kappa.kind() == SpectralKind::Scattering) return rational_quad(g, kappa.kappa(), pole_tolerance);

    const double kv = kappa.value();
    double f1 = 0.0, f2 = 0.0, f3 = 0.0;
    std::uint8_t pole = 0;
    kernels::resolvent_grid(g, std::span<const double>(&kv, 1), pole_tolerance,
                            {{&f1, 1}, {&f2, 1}, {&f3, 1}, {&pole, 1}}, kernels::Backend::Scalar);
    if (pole) throw PoleAtSpectralPoint(kv);
    return {f1, f2, f3, f2};
}

ResolventConstants constants_from_couplings(const Couplings& g) {
    g.validate();
    if (g.is_free()) throw UndefinedScale();

    const double c1 = (4.0 - g.g1 * g.g3 + g.g2 * g.g2) / 4.0;
    const double c2 = (4.0 + g.g1 * g.g3 - g.g2 * g.g2) / 4.0;
    const double c3 = g.g2;

    ResolventConstants out;
    double s = 1.0;
    if (g.g1 != 0.0 && g.g3 != 0.0) {
        out.family = Family::General;
        out.scale = std::sqrt(std::fabs(g.g3 / g.g1));
        s = -sign_of(g.g3);
    } else if (g.g3 == 0.0) {
        // Includes g1 = g3 = 0 with g2 != 0, where gamma = 0 and the family
        // no longer depends on kappa.
        out.family = Family::DeltaLimit;
        out.scale = std::fabs(g.g1);
        s = g.g1 != 0.0 ? sign_of(g.g1) : 1.0;
    } else {
        out.family = Family::DualLimit;
        out.scale = std::fabs(g.g3);
        s = -sign_of(g.g3);
    }
    out.c1 = s * c1;
    out.c2 = s * c2;
    out.c3 = s * c3;
    out.c4 = s * c2;
    return out;
}

ResolventQuad resolvent_from_constants(const ResolventConstants& c, SpectralPoint kappa, double pole_tolerance) {
    if (!std::isfinite(c.scale) || !std::isfinite(c.c1) || !std::isfinite(c.c2) || !std::isfinite(c.c3) ||
        !std::isfinite(c.c4)) {
        throw InvalidArgument("resolvent constants must be finite");
    }
    const cplx k = kappa.kappa();
    const double coeff_size = 2.0 * (std::fabs(c.c1) + std::fabs(c.c2) + std::fabs(c.c3) + std::fabs(c.c4));
    // The limiting families only exist on the zero-discriminant surface.
    if (c.family != Family::General && std::fabs(c.discriminant()) > 1e-12 * coeff_size * coeff_size) {
        throw InvalidArgument("limiting families need c3^2 + c2 c4 - c1^2 = 0");
    }
    ResolventQuad q;

    switch (c.family) {
        case Family::General: {
            if (!(c.scale > 0.0)) throw InvalidArgument("c0 must be > 0");
            const double delta = c.discriminant();
            const double r = std::sqrt(std::fabs(delta));
            const cplx a = c.scale * k;
            const cplx inv = 1.0 / a;
            cplx num, den;
            if (delta >= 0.0) {
                num = -r * (a + inv);
                den = r * (a - inv) + 2.0 * c.c1;
            } else {
                num = -r * (a - inv);
                den = r * (a + inv) + 2.0 * c.c1;
            }
            const double bound = pole_tolerance * (r * (std::abs(a) + std::abs(inv)) + coeff_size);
            if (!(std::abs(den) > bound)) throw PoleAtSpectralPoint(kappa.value());
            q.f1 = (num - 2.0 * c.c3) / den;
            q.f3 = (num + 2.0 * c.c3) / den;
            q.f2 = 1.0 - 2.0 * c.c2 / den;
            q.f4 = 1.0 - 2.0 * c.c4 / den;
            return q;
        }
        case Family::DeltaLimit: {
            if (!(c.scale >= 0.0)) throw InvalidArgument("gamma must be >= 0");
            const cplx den = c.scale + 2.0 * c.c1 * k;
            const double bound = pole_tolerance * (c.scale + coeff_size * std::abs(k));
            if (!(std::abs(den) > bound)) throw PoleAtSpectralPoint(kappa.value());
            q.f1 = (c.scale - 2.0 * c.c3 * k) / den;
            q.f3 = (c.scale + 2.0 * c.c3 * k) / den;
            q.f2 = 1.0 - 2.0 * c.c2 * k / den;
            q.f4 = 1.0 - 2.0 * c.c4 * k / den;
            return q;
        }
        case Family::DualLimit: {
            if (!(c.scale >= 0.0)) throw InvalidArgument("gamma must be >= 0");
            const cplx gk = c.scale * k;
            const cplx den = gk + 2.0 * c.c1;
            const double bound = pole_tolerance * (std::abs(gk) + coeff_size);
            if (!(std::abs(den) > bound)) throw PoleAtSpectralPoint(kappa.value());
            q.f1 = (-gk - 2.0 * c.c3) / den;
            q.f3 = (-gk + 2.0 * c.c3) / den;
            q.f2 = 1.0 - 2.0 * c.c2 / den;
            q.f4 = 1.0 - 2.0 * c.c4 / den;
            return q;
        }
    }
    throw InvalidArgument("unknown resolvent family");
}

double greens_function(const Couplings& g, SpectralPoint kappa, double x, double xp) {
    if (kappa.kind() != SpectralKind::Resolvent) {
        throw InvalidArgument("greens_function is defined on the real kappa axis");
    }
    if (x == 0.0 || xp == 0.0) throw SignUndefined();
    const double k = kappa.value();
    const ResolventQuad q = resolvent_from_couplings(g, kappa);
    const double f = q.sector(x > 0.0 ? 1 : -1, xp > 0.0 ? 1 : -1).real();
    return (std::exp(-k * std::fabs(x - xp)) - f * std::exp(-k * (std::fabs(x) + std::fabs(xp)))) / (2.0 * k);
}

SMatrix2 s_matrix(const Couplings& g, SpectralPoint k) {
    if (k.kind() != SpectralKind::Scattering) throw InvalidArgument("s_matrix needs a scattering wavenumber");
    const double kv = k.value();
    std::array<double, 6> v{};
    kernels::smatrix_grid(g, std::span<const double>(&kv, 1),
                          {{&v[0], 1}, {&v[1], 1}, {&v[2], 1}, {&v[3], 1}, {&v[4], 1}, {&v[5], 1}},
                          kernels::Backend::Scalar);
    SMatrix2 s;
    s(0, 0) = cplx(v[0], v[1]);
    s(1, 1) = s(0, 0);
    s(0, 1) = cplx(v[2], v[3]);
    s(1, 0) = cplx(v[4], v[5]);
    return s;
}

cplx even_phase(double g1, SpectralPoint k) {
    if (k.kind() != SpectralKind::Scattering) throw InvalidArgument("even_phase needs a scattering wavenumber");
    const double kv = k.value();
    double er = 0, ei = 0, o_r = 0, oi = 0;
    kernels::parity_phase_grid(g1, 0.0, std::span<const double>(&kv, 1), {{&er, 1}, {&ei, 1}, {&o_r, 1}, {&oi, 1}},
                               kernels::Backend::Scalar);
    return {er, ei};
}

cplx odd_phase(double g3, SpectralPoint k) {
    if (k.kind() != SpectralKind::Scattering) throw InvalidArgument("odd_phase needs a scattering wavenumber");
    const double kv = k.value();
    double er = 0, ei = 0, o_r = 0, oi = 0;
    kernels::parity_phase_grid(0.0, g3, std::span<const double>(&kv, 1), {{&er, 1}, {&ei, 1}, {&o_r, 1}, {&oi, 1}},
                               kernels::Backend::Scalar);
    return {o_r, oi};
}

double unitarity_residual(const Eigen::MatrixXcd& s) {
    const auto n = s.rows();
    return (s * s.adjoint() - Eigen::MatrixXcd::Identity(n, n)).norm();
}

std::vector<double> bound_states(const Couplings& g) {
    g.validate();
    const double qa = g.g3;
    const double qb = -0.5 * (4.0 - g.g1 * g.g3 + g.g2 * g.g2);
    const double qc = -g.g1;

    std::vector<double> roots;
    if (qa == 0.0) {
        if (qb != 0.0) roots.push_back(-qc / qb);
    } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
            const double q = -0.5 * (qb + sign_of(qb) * std::sqrt(disc));
            roots.push_back(q / qa);
            if (q != 0.0) roots.push_back(qc / q);
        }
    }

    std::vector<double> out;
    for (double r : roots) {
        if (!(r > 0.0) || !std::isfinite(r)) continue;
        for (int it = 0; it < 3; ++it) {
            const double p = (qa * r + qb) * r + qc;
            const double dp = 2.0 * qa * r + qb;
            if (dp == 0.0) break;
            r -= p / dp;
        }
        if (r > 0.0) out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(a, b); }),
              out.end());
    return out;
}

OneSided one_sided_limits(const RealFunction& fn) {
    OneSided out;
    out.right = richardson(fn(kSteps[0]), fn(kSteps[1]), fn(kSteps[2]));
    out.left = richardson(fn(-kSteps[0]), fn(-kSteps[1]), fn(-kSteps[2]));
    if (!std::isfinite(out.left) || !std::isfinite(out.right)) {
        throw MissingLimit("one-sided limit at 0 is not finite");
    }
    return out;
}

OneSided one_sided_derivatives(const RealFunction& fn) {
    auto right_quotient = [&](double h) { return (fn(2.0 * h) - fn(h)) / h; };
    auto left_quotient = [&](double h) { return (fn(-h) - fn(-2.0 * h)) / h; };
    OneSided out;
    out.right = richardson(right_quotient(kSteps[0]), right_quotient(kSteps[1]), right_quotient(kSteps[2]));
    out.left = richardson(left_quotient(kSteps[0]), left_quotient(kSteps[1]), left_quotient(kSteps[2]));
    if (!std::isfinite(out.left) || !std::isfinite(out.right)) {
        throw MissingDerivative("one-sided derivative at 0 is not finite");
    }
    return out;
}

double pair_delta(OneSided limits) {
    if (!std::isfinite(limits.left) || !std::isfinite(limits.right)) {
        throw MissingLimit("one-sided limit at 0 is not finite");
    }
    return 0.5 * (limits.right + limits.left);
}

double pair_delta(const RealFunction& fn) { return pair_delta(one_sided_limits(fn)); }

double pair_delta_prime_p(OneSided derivatives) {
    if (!std::isfinite(derivatives.left) || !std::isfinite(derivatives.right)) {
        throw MissingDerivative("one-sided derivative at 0 is not finite");
    }
    return -0.5 * (derivatives.right + derivatives.left);
}

double pair_delta_prime_p(const RealFunction& fn) { return pair_delta_prime_p(one_sided_derivatives(fn)); }

ResolventConstants dual_transform(const ResolventConstants& c) {
    ResolventConstants d = c;
    switch (c.family) {
        case Family::General:
            d.scale = 1.0 / c.scale;
            if (c.discriminant() >= 0.0) {
                d.c1 = -c.c1;
                d.c2 = -c.c2;
                d.c4 = -c.c4;
            } else {
                d.c3 = -c.c3;
            }
            return d;
        case Family::DeltaLimit:
            d.family = Family::DualLimit;
            d.c3 = -c.c3;
            return d;
        case Family::DualLimit:
            d.family = Family::DeltaLimit;
            d.c3 = -c.c3;
            return d;
    }
    return d;
}

QuadFamily dual_transform_quad(QuadFamily family) {
    return [family = std::move(family)](double kappa) {
        const ResolventQuad q = family(1.0 / kappa);
        return ResolventQuad{-q.f1, q.f2, -q.f3, q.f4};
    };
}

}  // namespace pointlab
