#include "pointlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pointlab::verify {

namespace {

constexpr int kSign[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};

// Per-piece relative target for Gauss-Kronrod; tighter values only burn
// recursion depth on roundoff.
constexpr double kRelativeTolerance = 1e-12;

double max_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::isfinite(x) ? x : std::numeric_limits<double>::infinity());
    return m;
}

std::string describe_grid(const char* what, double lo, double hi, std::size_t n) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s in [%g, %g], %zu points", what, lo, hi, n);
    return buf;
}

// Central difference at step h with one Richardson step.
template <class Fn>
auto derivative(Fn&& fn, double x, double h) {
    const auto d_coarse = (fn(x + h) - fn(x - h)) / (2.0 * h);
    const auto d_fine = (fn(x + h / 2) - fn(x - h / 2)) / h;
    return (4.0 * d_fine - d_coarse) / 3.0;
}

// Ridders extrapolation of central differences. The first step is a tenth of
// the local variation scale |f|/|f'|, which keeps near-pole points out of the
// roundoff regime while the tableau removes truncation error.
template <class Fn>
cplx adaptive_derivative(Fn&& fn, double x, double scale) {
    constexpr int kTable = 10;
    constexpr double kShrink = 1.4, kShrink2 = kShrink * kShrink;
    double h = 0.1 * scale;
    cplx table[kTable][kTable];
    table[0][0] = (fn(x + h) - fn(x - h)) / (2.0 * h);
    cplx best = table[0][0];
    double err = INFINITY;
    for (int i = 1; i < kTable; ++i) {
        h /= kShrink;
        table[0][i] = (fn(x + h) - fn(x - h)) / (2.0 * h);
        double fac = kShrink2;
        for (int j = 1; j <= i; ++j) {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= kShrink2;
            const double e = std::max(std::abs(table[j][i] - table[j - 1][i]), std::abs(table[j][i] - table[j - 1][i - 1]));
            if (e <= err) {
                err = e;
                best = table[j][i];
            }
        }
        if (std::abs(table[i][i] - table[i - 1][i - 1]) >= 2.0 * err) break;
    }
    return best;
}

// Five-point stencil, fourth order.
template <class Fn>
double second_derivative(Fn&& fn, double x, double h) {
    return (-fn(x + 2 * h) + 16.0 * fn(x + h) - 30.0 * fn(x) + 16.0 * fn(x - h) - fn(x - 2 * h)) / (12.0 * h * h);
}

struct QuadArrays {
    std::array<double, 4> f1, f2, f3, f4;
};

QuadFamily couplings_family(Couplings g) {
    return [g](double kappa) { return resolvent_from_couplings(g, SpectralPoint::resolvent(kappa)); };
}

QuadFamily constants_family(ResolventConstants c) {
    return [c](double kappa) { return resolvent_from_constants(c, SpectralPoint::resolvent(kappa)); };
}

// Max closed-form residual over a kappa grid, skipping coincident points and
// poles; returns the number of skipped pairs through `skipped`.
double closed_grid_max(const QuadFamily& family, const std::vector<double>& grid, std::size_t* skipped = nullptr) {
    double worst = 0.0;
    std::size_t skip = 0;
    for (double k1 : grid) {
        for (double k2 : grid) {
            if (k1 == k2) continue;
            try {
                for (double r : resolvent_residual_closed(family, k1, k2)) worst = std::max(worst, r);
            } catch (const PoleAtSpectralPoint&) {
                ++skip;
            }
        }
    }
    if (skipped) *skipped = skip;
    return worst;
}

double ode_grid_max(const QuadFamily& family, const std::vector<double>& grid) {
    double worst = 0.0;
    for (const auto& row : ode_residual(family, grid)) {
        for (double r : row) worst = std::max(worst, r);
    }
    return worst;
}

}  // namespace

ResidualReport make_report(std::string name, double max_residual, double tolerance, std::string grid) {
    return {std::move(name), max_residual, tolerance, std::move(grid), max_residual <= tolerance};
}

std::array<double, 4> resolvent_residual_closed(const QuadFamily& family, double kappa1, double kappa2) {
    if (kappa1 == kappa2) throw InvalidArgument("resolvent residual needs kappa1 != kappa2");
    const ResolventQuad q1 = family(kappa1);
    const ResolventQuad q2 = family(kappa2);
    // Near a pole the terms reach ~1e6 while the sum must cancel to ~1e-10;
    // accumulate in extended precision so the oracle does not add its own ulps.
    using lcplx = std::complex<long double>;
    auto at = [](const ResolventQuad& q, int s, int sp) { return lcplx(q.sector(s, sp)); };
    const long double dm = static_cast<long double>(kappa1) - kappa2;
    const long double dp = static_cast<long double>(kappa1) + kappa2;
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        const int s = kSign[i][0], sp = kSign[i][1];
        const lcplx r = at(q1, s, sp) / dm + at(q1, s, -sp) / dp - at(q2, s, sp) / dm + at(q2, -s, sp) / dp -
                        (at(q1, s, -1) * at(q2, -1, sp) + at(q1, s, 1) * at(q2, 1, sp)) / dp;
        out[static_cast<std::size_t>(i)] = static_cast<double>(std::abs(r));
    }
    return out;
}

double IntegralResidual::max_residual() const { return max_of(residuals); }

IntegralResidual resolvent_residual_integral(const Couplings& g, double kappa1, double kappa2,
                                             const QuadratureSpec& spec) {
    if (kappa1 == kappa2) throw InvalidArgument("integral residual needs kappa1 != kappa2");
    const ResolventQuad q1 = resolvent_from_couplings(g, SpectralPoint::resolvent(kappa1));
    const ResolventQuad q2 = resolvent_from_couplings(g, SpectralPoint::resolvent(kappa2));
    auto kernel = [](double kappa, const ResolventQuad& q, double x, double y) {
        const double f = q.sector(x > 0.0 ? 1 : -1, y > 0.0 ? 1 : -1).real();
        return (std::exp(-kappa * std::fabs(x - y)) - f * std::exp(-kappa * (std::fabs(x) + std::fabs(y)))) /
               (2.0 * kappa);
    };
    auto fmax = [](const ResolventQuad& q) {
        return std::max({std::abs(q.f1), std::abs(q.f2), std::abs(q.f3), std::abs(q.f4)});
    };
    const double factor = kappa2 * kappa2 - kappa1 * kappa1;
    const double ksum = kappa1 + kappa2;

    IntegralResidual out;
    out.truncation = spec.truncation;
    for (const auto& [x, xp] : spec.points) {
        if (x == 0.0 || xp == 0.0) throw SignUndefined();
        // |integrand| <= c e^{-(k1+k2)|x''|} beyond the kinks.
        const double c = (1.0 + fmax(q1)) * (1.0 + fmax(q2)) * std::exp(kappa1 * std::fabs(x) + kappa2 * std::fabs(xp)) /
                         (4.0 * kappa1 * kappa2);
        const double needed = std::log(4.0 * c * std::fabs(factor) / (ksum * spec.tolerance)) / ksum;
        const double L = std::max({spec.truncation, needed, std::max(std::fabs(x), std::fabs(xp)) + 1.0});
        out.truncation = std::max(out.truncation, L);

        std::vector<double> cuts{-L, 0.0, x, xp, L};
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        auto integrand = [&](double z) { return kernel(kappa1, q1, x, z) * kernel(kappa2, q2, z, xp); };

        double integral = 0.0;
        double error_budget = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double err = 0.0;
            integral += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                integrand, cuts[i], cuts[i + 1], spec.max_depth, kRelativeTolerance, &err);
            error_budget += err;
        }
        if (!(std::fabs(factor) * error_budget <= 0.5 * spec.tolerance)) {
            char msg[128];
            std::snprintf(msg, sizeof msg, "adaptive quadrature error estimate %.3g exceeds the budget",
                          std::fabs(factor) * error_budget);
            throw QuadratureFailure(msg);
        }
        const double lhs = kernel(kappa1, q1, x, xp) - kernel(kappa2, q2, x, xp);
        out.residuals.push_back(std::fabs(lhs - factor * integral));
    }
    return out;
}

std::vector<std::array<double, 4>> ode_residual(const QuadFamily& family, const std::vector<double>& grid) {
    std::vector<std::array<double, 4>> out;
    out.reserve(grid.size());
    for (double k : grid) {
        const ResolventQuad q = family(k);
        const double h0 = 1e-7 * k;
        const ResolventQuad up = family(k + h0), down = family(k - h0);
        double scale = k;
        for (int i = 0; i < 4; ++i) {
            const double slope = std::abs(up.sector(kSign[i][0], kSign[i][1]) - down.sector(kSign[i][0], kSign[i][1])) / (2.0 * h0);
            scale = std::min(scale, std::abs(q.sector(kSign[i][0], kSign[i][1])) / std::max(slope, 1e-300));
        }
        scale = std::max(scale, 1e-6 * k);
        const cplx d1 = adaptive_derivative([&](double s) { return family(s).f1; }, k, scale);
        const cplx d2 = adaptive_derivative([&](double s) { return family(s).f2; }, k, scale);
        const cplx d3 = adaptive_derivative([&](double s) { return family(s).f3; }, k, scale);
        const cplx d4 = adaptive_derivative([&](double s) { return family(s).f4; }, k, scale);
        const double tk = 2.0 * k;
        out.push_back({
            std::abs(d1 + (q.f2 + q.f4) / tk - (q.f2 * q.f4 + q.f1 * q.f1) / tk),
            std::abs(d2 + (q.f1 + q.f3) / tk - (q.f2 * q.f3 + q.f1 * q.f2) / tk),
            std::abs(d3 + (q.f2 + q.f4) / tk - (q.f3 * q.f3 + q.f2 * q.f4) / tk),
            std::abs(d4 + (q.f1 + q.f3) / tk - (q.f3 * q.f4 + q.f1 * q.f4) / tk),
        });
    }
    return out;
}

double AppendixResidual::max_residual() const {
    return std::max({max_of(second_order), max_of(log_derivative), max_of(side_ratio), max_of(side_difference)});
}

AppendixResidual appendix_a_residual(const ResolventConstants& c, const std::vector<double>& grid) {
    if (c.c2 == 0.0) throw InvalidArgument("appendix check needs c2 != 0");
    auto quad = [&](double k) { return resolvent_from_constants(c, SpectralPoint::resolvent(k)); };
    // e^F is recovered from f2; only |e^F| enters the log.
    auto exp_f = [&](double k) {
        const double v = (quad(k).f2.real() - 1.0) / c.c2;
        if (v == 0.0 || !std::isfinite(v)) {
            throw LogDomain("(f2 - 1)/c2 is zero or non-finite at kappa = " + std::to_string(k));
        }
        return v;
    };
    auto big_f = [&](double k) { return std::log(std::fabs(exp_f(k))); };

    AppendixResidual out;
    for (double k : grid) {
        const ResolventQuad q = quad(k);
        const double e = exp_f(k);
        const double d1 = derivative(big_f, k, 1e-5 * k);
        // Near a pole F varies on the scale 1/|F'|, not kappa.
        const double scale = std::min(k, 1.0 / std::max(std::fabs(d1), 1e-300));
        const double d2 = second_derivative(big_f, k, 2e-3 * scale);
        const double lhs = 2.0 * k * (d1 + k * d2);
        const double rhs = (k * d1) * (k * d1) - 1.0 + (c.c3 * c.c3 + c.c2 * c.c4) * e * e;
        out.second_order.push_back(std::fabs(lhs - rhs));
        out.log_derivative.push_back(std::abs(d1 - (q.f1 + q.f3) / (2.0 * k)));
        out.side_ratio.push_back(c.c4 != 0.0 ? std::abs((q.f2 - 1.0) / c.c2 - (q.f4 - 1.0) / c.c4) : 0.0);
        out.side_difference.push_back(std::abs(q.f1 - q.f3 - 2.0 * c.c3 * e));
    }
    return out;
}

TransferResult transfer_matrix_oracle(const channels::SiteArray& sites, SpectralPoint k) {
    if (sites.channels() != 1) throw InvalidArgument("transfer-matrix oracle is single-channel");
    const double kv = k.value();
    const cplx I(0.0, 1.0);
    Eigen::Matrix2cd total = Eigen::Matrix2cd::Identity();
    for (const channels::Site& site : sites.sites()) {
        const auto& c = site.couplings;
        if (std::abs(c.c2(0, 0)) != 0.0 || std::abs(c.c3(0, 0)) != 0.0) {
            throw InvalidArgument("transfer-matrix oracle accepts delta-only sites");
        }
        const double g = c.c1(0, 0).real();
        const cplx a = g / (2.0 * I * kv);
        const cplx e2 = std::exp(2.0 * I * kv * site.position);
        // (A, B) of e^{ikx}, e^{-ikx} across a delta of strength g.
        Eigen::Matrix2cd m;
        m << 1.0 + a, a / e2, -a * e2, 1.0 - a;
        total = m * total;
    }
    TransferResult r;
    r.reflection = -total(1, 0) / total(1, 1);
    r.transmission = total(0, 0) + total(0, 1) * r.reflection;
    return r;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
    for (double& x : v) x = std::exp(x);
    return v;
}

std::vector<ResidualReport> default_suite(const SuiteOptions& options) {
    std::vector<ResidualReport> out;
    const std::vector<double> grid = logspace(0.1, 10.0, 20);
    const std::string grid_desc = describe_grid("kappa1 x kappa2 (log)", 0.1, 10.0, 20);

    std::vector<std::pair<std::string, Couplings>> couplings{
        {"g=(1,2,3)", {1, 2, 3}}, {"g=(1,0,0)", {1, 0, 0}}, {"g=(0,1,0)", {0, 1, 0}},
        {"g=(0,0,1)", {0, 0, 1}}, {"g=(-2,0.5,1)", {-2, 0.5, 1}}};
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(-5.0, 5.0);
    for (std::size_t i = 0; i < options.random_couplings; ++i) {
        const Couplings g{unit(rng), unit(rng), unit(rng)};
        char name[96];
        std::snprintf(name, sizeof name, "g=(%.6g,%.6g,%.6g)", g.g1, g.g2, g.g3);
        couplings.emplace_back(name, g);
    }
    for (const auto& [name, g] : couplings) {
        out.push_back(make_report("resolvent_closed " + name, closed_grid_max(couplings_family(g), grid), 1e-10,
                                  grid_desc));
    }

    const std::vector<std::pair<std::string, ResolventConstants>> constants{
        {"general c=(1,0,2,0,2)", {Family::General, 1.0, 0.0, 2.0, 0.0, 2.0}},
        {"general c=(0.7,1.5,0.3,0.2,0.3)", {Family::General, 0.7, 1.5, 0.3, 0.2, 0.3}},
        {"delta-limit gamma=1 c=(0.5,0.5,0,0.5)", {Family::DeltaLimit, 1.0, 0.5, 0.5, 0.0, 0.5}},
        {"dual-limit gamma=2 c=(1.25,0.75,1,0.75)", {Family::DualLimit, 2.0, 1.25, 0.75, 1.0, 0.75}},
    };
    for (const auto& [name, c] : constants) {
        out.push_back(make_report("resolvent_closed " + name, closed_grid_max(constants_family(c), grid), 1e-10,
                                  grid_desc));
        out.push_back(make_report("resolvent_closed dual of " + name,
                                  closed_grid_max(constants_family(dual_transform(c)), grid), 1e-10, grid_desc));
    }

    QuadratureSpec spec;
    spec.points = {{0.5, 1.5}, {-0.7, 0.3}, {-1.2, -0.4}, {2.0, -1.0}, {0.25, 0.25}};
    const std::string quad_desc = "kappa1=1, kappa2=2, 5 (x, x') samples, L>=40";
    for (const auto& [name, g] : std::vector<std::pair<std::string, Couplings>>{
             {"g=(2,0,0)", {2, 0, 0}}, {"g=(0,0,0)", {0, 0, 0}}, {"g=(0,1,0)", {0, 1, 0}}, {"g=(1,2,3)", {1, 2, 3}}}) {
        const double tol = g.is_free() ? 1e-10 : 1e-6;
        out.push_back(make_report("resolvent_integral " + name,
                                  resolvent_residual_integral(g, 1.0, 2.0, spec).max_residual(), tol, quad_desc));
    }

    const std::vector<double> ode_grid = logspace(0.1, 10.0, 40);
    const std::string ode_desc = describe_grid("kappa (log)", 0.1, 10.0, 40);
    out.push_back(make_report("ode g=(1,0,0)", ode_grid_max(couplings_family({1, 0, 0}), ode_grid), 1e-7, ode_desc));
    out.push_back(make_report("ode g=(1,2,3)", ode_grid_max(couplings_family({1, 2, 3}), ode_grid), 1e-6, ode_desc));
    for (const auto& [name, c] : constants) {
        out.push_back(make_report("ode " + name, ode_grid_max(constants_family(c), ode_grid), 1e-6, ode_desc));
    }

    // 24 points keep kappa = 1 (the pole of the first constants example) off the grid.
    const std::vector<double> app_grid = linspace(0.2, 5.0, 24);
    out.push_back(make_report("appendix_a c=(1,0,2,0,2)",
                              appendix_a_residual(constants[0].second, app_grid).max_residual(), 1e-5,
                              describe_grid("kappa", 0.2, 5.0, 24)));
    out.push_back(make_report("appendix_a c=(0.7,1.5,0.3,0.2,0.3)",
                              appendix_a_residual(constants[1].second, app_grid).max_residual(), 1e-5,
                              describe_grid("kappa", 0.2, 5.0, 24)));

    double transfer_worst = 0.0;
    const std::vector<double> ks = linspace(0.1, 10.0, 50);
    for (std::size_t count = 1; count <= 3; ++count) {
        std::vector<channels::Site> sites;
        for (std::size_t j = 0; j < count; ++j) {
            sites.push_back({0.8 * static_cast<double>(j), channels::MatrixCouplings::scalar({1.0 + 0.5 * j, 0, 0})});
        }
        const channels::SiteArray array(sites);
        for (double k : ks) {
            const SpectralPoint kp = SpectralPoint::scattering(k);
            const TransferResult t = transfer_matrix_oracle(array, kp);
            const auto sol = channels::solve_scattering(
                array, channels::IncidentWave(kp, channels::IncidentMode::FromLeft, Eigen::VectorXcd::Ones(1)));
            transfer_worst = std::max({transfer_worst, std::abs(sol.right_moving.back()(0) - t.transmission),
                                       std::abs(sol.left_moving.front()(0) - t.reflection)});
        }
    }
    out.push_back(make_report("transfer_matrix vs channels (1-3 delta sites)", transfer_worst, 1e-12,
                              describe_grid("k", 0.1, 10.0, 50)));

    // The oracle must notice a 1e-3 shift in any single f_j.
    double weakest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 4; ++j) {
        const QuadFamily bad = [j](double k) {
            ResolventQuad q = resolvent_from_couplings({1, 2, 3}, SpectralPoint::resolvent(k));
            cplx* f[4] = {&q.f1, &q.f2, &q.f3, &q.f4};
            *f[j] += 1e-3;
            return q;
        };
        weakest = std::min(weakest, closed_grid_max(bad, grid));
    }
    ResidualReport sensitivity = make_report("oracle sensitivity (1e-3 shift detected)", weakest, 1e-4, grid_desc);
    sensitivity.pass = weakest >= 1e-4;
    out.push_back(sensitivity);
    return out;
}

std::vector<ResidualReport> corrupted_provider_self_test() {
    const QuadFamily bad = [](double k) {
        ResolventQuad q = resolvent_from_couplings({1, 2, 3}, SpectralPoint::resolvent(k));
        q.f1 += 1e-3;
        return q;
    };
    const std::vector<double> grid = logspace(0.1, 10.0, 20);
    return {make_report("resolvent_closed corrupted provider (f1 + 1e-3)", closed_grid_max(bad, grid), 1e-10,
                        describe_grid("kappa1 x kappa2 (log)", 0.1, 10.0, 20))};
}

}  // namespace pointlab::verify
