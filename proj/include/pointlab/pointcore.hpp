#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pointlab/errors.hpp"

namespace pointlab {

using cplx = std::complex<double>;

// Strengths of the three point-interaction terms at the origin: g1 multiplies
// the delta term (1/length), g2 the mixed term (dimensionless), g3 the
// derivative-derivative term (length).
struct Couplings {
    double g1 = 0.0;
    double g2 = 0.0;
    double g3 = 0.0;

    bool is_free() const noexcept { return g1 == 0.0 && g2 == 0.0 && g3 == 0.0; }
    // Throws InvalidArgument on non-finite components.
    void validate() const;
};

enum class SpectralKind { Resolvent, Scattering };

// A positive spectral parameter. Resolvent points are the real kappa > 0;
// scattering points are wavenumbers k > 0, continued as kappa = -i k.
class SpectralPoint {
public:
    static SpectralPoint resolvent(double kappa) { return SpectralPoint(SpectralKind::Resolvent, kappa); }
    static SpectralPoint scattering(double k) { return SpectralPoint(SpectralKind::Scattering, k); }

    SpectralKind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }
    // kappa on the resolvent axis, -i k for scattering points.
    cplx kappa() const noexcept {
        return kind_ == SpectralKind::Resolvent ? cplx(value_, 0.0) : cplx(0.0, -value_);
    }

private:
    SpectralPoint(SpectralKind kind, double value);
    SpectralKind kind_;
    double value_;
};

// f(kappa; sg x, sg x') in the four quadrants:
// f1 (+,+), f2 (-,+), f3 (-,-), f4 (+,-).
struct ResolventQuad {
    cplx f1, f2, f3, f4;

    // sx, sxp are the signs of x and x' (+1 or -1).
    cplx sector(int sx, int sxp) const;
};

enum class Family {
    General,     // finite scale c0
    DeltaLimit,  // c0 -> 0 with gamma = c0 * (common factor) fixed; tends to 1 as kappa -> 0
    DualLimit,   // c0 -> infinity counterpart; tends to -1 as kappa -> infinity
};

// Integration constants of the resolvent families. For Family::General,
// `scale` is c0 > 0; for the two limits it is gamma >= 0. The coefficients
// c1..c4 are defined up to a common positive factor.
struct ResolventConstants {
    Family family = Family::General;
    double scale = 1.0;
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;

    double discriminant() const noexcept { return c3 * c3 + c2 * c4 - c1 * c1; }
};

using SMatrix2 = Eigen::Matrix2cd;

inline constexpr double kDefaultPoleTolerance = 1e-12;

ResolventQuad resolvent_from_couplings(const Couplings& g, SpectralPoint kappa,
                                       double pole_tolerance = kDefaultPoleTolerance);

// Throws UndefinedScale for g = (0,0,0). When g1 or g3 vanishes the result is
// tagged DeltaLimit / DualLimit instead of carrying an infinite or zero c0.
ResolventConstants constants_from_couplings(const Couplings& g);

ResolventQuad resolvent_from_constants(const ResolventConstants& c, SpectralPoint kappa,
                                       double pole_tolerance = kDefaultPoleTolerance);

// Resolvent kernel at real kappa > 0. Throws SignUndefined when x or x' is 0.
double greens_function(const Couplings& g, SpectralPoint kappa, double x, double xp);

// [in][out] in the (+, -) direction basis.
SMatrix2 s_matrix(const Couplings& g, SpectralPoint k);
cplx even_phase(double g1, SpectralPoint k);
cplx odd_phase(double g3, SpectralPoint k);

// ||S S^dagger - I|| (Frobenius).
double unitarity_residual(const Eigen::MatrixXcd& s);

// Positive roots of g3 k^2 - (4 - g1 g3 + g2^2) k / 2 - g1, ascending.
std::vector<double> bound_states(const Couplings& g);

// Values on either side of the origin: left = g(0-), right = g(0+).
struct OneSided {
    double left = 0.0;
    double right = 0.0;
};

using RealFunction = std::function<double(double)>;

// Richardson-extrapolated one-sided limits and derivatives at 0, sampled at
// steps 1e-3, 5e-4, 2.5e-4 away from the origin.
OneSided one_sided_limits(const RealFunction& fn);
OneSided one_sided_derivatives(const RealFunction& fn);

double pair_delta(OneSided limits);
double pair_delta(const RealFunction& fn);
double pair_delta_prime_p(OneSided derivatives);
double pair_delta_prime_p(const RealFunction& fn);

using QuadFamily = std::function<ResolventQuad(double kappa)>;

ResolventConstants dual_transform(const ResolventConstants& c);
// kappa -> (-f1, f2, -f3, f4)(1/kappa)
QuadFamily dual_transform_quad(QuadFamily family);

}  // namespace pointlab
