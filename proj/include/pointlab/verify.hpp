#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pointlab/channels.hpp"
#include "pointlab/pointcore.hpp"

namespace pointlab::verify {

struct ResidualReport {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string grid;
    bool pass = false;
};

ResidualReport make_report(std::string name, double max_residual, double tolerance, std::string grid);

// Closed-form resolvent-equation residuals in sector order
// (+,+), (-,+), (-,-), (+,-).
std::array<double, 4> resolvent_residual_closed(const QuadFamily& family, double kappa1, double kappa2);

struct QuadratureSpec {
    double truncation = 40.0;   // lower bound on L; raised until the tail bound is below tolerance / 2
    double tolerance = 1e-9;    // absolute error budget per sample
    unsigned max_depth = 20;
    std::vector<std::pair<double, double>> points;  // (x, x') samples, both nonzero
};

struct IntegralResidual {
    std::vector<double> residuals;  // one per (x, x') sample
    double truncation = 0.0;        // L actually used
    double max_residual() const;
};

IntegralResidual resolvent_residual_integral(const Couplings& g, double kappa1, double kappa2,
                                             const QuadratureSpec& spec);

// Residuals of the four first-order equations at each grid point.
std::vector<std::array<double, 4>> ode_residual(const QuadFamily& family, const std::vector<double>& grid);

struct AppendixResidual {
    std::vector<double> second_order;      // the F'' equation
    std::vector<double> log_derivative;    // F' against (f1 + f3) / (2 kappa)
    std::vector<double> side_ratio;        // (f2 - 1)/c2 - (f4 - 1)/c4
    std::vector<double> side_difference;   // f1 - f3 - 2 c3 e^F
    double max_residual() const;
};

AppendixResidual appendix_a_residual(const ResolventConstants& c, const std::vector<double>& grid);

struct TransferResult {
    cplx transmission{1.0, 0.0};
    cplx reflection{0.0, 0.0};
};

// Delta-only single-channel arrays: product of 2x2 transfer matrices.
TransferResult transfer_matrix_oracle(const channels::SiteArray& sites, SpectralPoint k);

std::vector<double> linspace(double lo, double hi, std::size_t n);
std::vector<double> logspace(double lo, double hi, std::size_t n);

struct SuiteOptions {
    std::uint64_t seed = 0;
    std::size_t random_couplings = 8;
};

std::vector<ResidualReport> default_suite(const SuiteOptions& options = {});
// Runs the closed-form oracle on a provider with f1 shifted by 1e-3; the
// report fails when the oracle works.
std::vector<ResidualReport> corrupted_provider_self_test();

}  // namespace pointlab::verify
