#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pointlab/pointcore.hpp"

namespace pointlab::qmemory {

using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

class MemoryState {
public:
    // Throws InvalidArgument unless |a1|^2 + |a2|^2 = 1 within 1e-12.
    MemoryState(cplx a1, cplx a2);
    explicit MemoryState(const Vec2& v) : MemoryState(v(0), v(1)) {}

    static MemoryState normalized(cplx a1, cplx a2);
    // (1/sqrt2, e^{i pi/4}/sqrt2)
    static MemoryState standard();

    cplx a1() const noexcept { return v_(0); }
    cplx a2() const noexcept { return v_(1); }
    const Vec2& vec() const noexcept { return v_; }

private:
    Vec2 v_;
};

// ||b - e^{i chi} a|| minimized over chi.
double distance_up_to_phase(const MemoryState& a, const MemoryState& b);
double distance(const MemoryState& a, const MemoryState& b);

enum class Parity { Even, Odd };

struct ScatterOp {
    Parity parity;
    SpectralPoint k;
};

using Plan = std::vector<ScatterOp>;

// Odd block exp(-i sigma3 * 2 atan(g3 k / 2)) and even block
// exp(-i sigma1 * 2 atan(g1 / (2k))), built from the rational phases.
Mat2 odd_matrix(double g3, SpectralPoint k);
Mat2 even_matrix(double g1, SpectralPoint k);
Mat2 op_matrix(const ScatterOp& op, double g1, double g3);
// Phase angle of the op's parity eigenvalue: -2 atan(g3 k/2) or -2 atan(g1/(2k)).
double op_phase(const ScatterOp& op, double g1, double g3);

MemoryState apply_scatter(const MemoryState& state, const ScatterOp& op, double g1, double g3);
MemoryState apply_plan(const MemoryState& state, const Plan& plan, double g1, double g3);

// Ordered product S(op_0) S(op_1) ... ; the last op acts first.
Mat2 plan_matrix(const Plan& plan, double g1, double g3);

// Ops of one parity realizing exp(-i sigma theta) (sigma3 for odd, sigma1 for
// even). Zero, one or two ops, depending on the reachable sign.
Plan rotation_ops(Parity parity, double theta, double g1, double g3);
// Reversed plan with every rotation negated.
Plan inverse_plan(const Plan& plan, double g1, double g3);

Plan factorize_su2(const Mat2& u, double g1, double g3, double tol = 1e-9);

// Plans mapping s to target (write) and current to s (reset), exact up to
// global phase.
Plan write(const MemoryState& s, const MemoryState& target, double g1, double g3);
Plan reset(const MemoryState& current, const MemoryState& s, double g1, double g3);

std::vector<double> interference_pattern(const MemoryState& state, const ScatterOp& op, double g1, double g3,
                                         const std::vector<double>& xs);

enum class Observable { A1, A2, A3 };

double observe(const MemoryState& state, Observable which, const MemoryState& s);
// |(R a)_1 + s_1|^2 - |(R a)_2 + s_2|^2
double standard_interference(const Vec2& a, const Mat2& pre_rotation, const MemoryState& s);

struct Sample {
    double x;
    double value;
};

// Least-squares fit value = c0 + cc cos 2kx + cs sin 2kx; returns -cs / (2 sin phi).
double estimate_from_pattern(const std::vector<Sample>& samples, SpectralPoint k, double phi);

struct Observables {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::optional<double> a4;

    void validate() const;
};

// exp(-i sigma3 pi/4): the fixed pre-rotation applied before the A4 readout.
Mat2 reference_rotation();

struct ReconstructOptions {
    double tolerance = 1e-6;
};

MemoryState reconstruct_state(const Observables& obs, const MemoryState& s, ReconstructOptions options = {});

struct ReadoutOptions {
    double noise_sigma = 0.0;     // additive Gaussian noise per pattern sample
    std::size_t samples = 1024;   // samples per pattern
    std::uint64_t seed = 0;
};

struct ProtocolEvent {
    std::string action;  // "interrogate", "measure", "restore", "reconstruct"
    std::string label;
    double value = 0.0;
    Plan ops;
};

struct ReadResult {
    Observables observed;
    MemoryState recovered;
    MemoryState final_state;
    double recovery_error = 0.0;     // ||recovered - state||
    double restoration_error = 0.0;  // ||final - state|| up to global phase
    std::vector<ProtocolEvent> log;
};

ReadResult read_protocol(const MemoryState& state, const MemoryState& s, double g1, double g3,
                         ReadoutOptions options = {});

struct AdmissibilityReport {
    double purity = 1.0;  // minimum over the sample set
    bool admissible = true;
    Mat2 density = Mat2::Identity() / 2.0;  // M of the minimizing state
    std::size_t worst_index = 0;
};

inline constexpr double kAdmissibilityTolerance = 1e-10;

AdmissibilityReport admissibility_check(cplx alpha, cplx beta, SpectralPoint k, double g1, double g3,
                                        const std::vector<MemoryState>& states);

}  // namespace pointlab::qmemory
