#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pointlab/pointcore.hpp"

namespace pointlab::channels {

// Hermitian n x n coupling matrices of one site; C1 pairs with the mean
// value, C3 with the mean slope, C2 mixes the two.
struct MatrixCouplings {
    Eigen::MatrixXcd c1, c2, c3;

    static MatrixCouplings scalar(const Couplings& g);
    static MatrixCouplings zero(Eigen::Index n);

    Eigen::Index channels() const noexcept { return c1.rows(); }
    // Throws InvalidArgument on shape mismatch or non-hermitian input (1e-12).
    void validate() const;
};

struct Site {
    double position = 0.0;
    MatrixCouplings couplings;
};

class SiteArray {
public:
    static constexpr double kMinSeparation = 1e-9;

    // Empty array of n-channel sites.
    explicit SiteArray(Eigen::Index n);
    // Throws InvalidArgument unless positions increase by more than
    // kMinSeparation and every site shares the channel count.
    explicit SiteArray(std::vector<Site> sites);

    Eigen::Index channels() const noexcept { return n_; }
    std::size_t size() const noexcept { return sites_.size(); }
    bool empty() const noexcept { return sites_.empty(); }
    const Site& operator[](std::size_t i) const { return sites_[i]; }
    const std::vector<Site>& sites() const noexcept { return sites_; }

private:
    Eigen::Index n_ = 1;
    std::vector<Site> sites_;
};

enum class IncidentMode { FromLeft, FromRight, Even, Odd };

// Incoming amplitudes: FromLeft enters the leftmost segment as a e^{ikx};
// FromRight enters the rightmost segment as a e^{-ikx}; Even sends a from
// both sides; Odd sends a from the left and -a from the right.
struct IncidentWave {
    SpectralPoint k;
    IncidentMode mode;
    Eigen::VectorXcd amplitudes;

    IncidentWave(SpectralPoint k, IncidentMode mode, Eigen::VectorXcd amplitudes);

    Eigen::VectorXcd incoming_left() const;   // right-moving amplitude in segment 0
    Eigen::VectorXcd incoming_right() const;  // left-moving amplitude in the last segment
};

// Unknown ordering: B_0, (A_1, B_1), ..., (A_{M-1}, B_{M-1}), A_M, each an
// n-vector; segment s holds A_s e^{ikx} + B_s e^{-ikx}.
struct LinearSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
};

LinearSystem assemble_system(const SiteArray& sites, const IncidentWave& incident);

struct ScatteringSolution {
    double k = 0.0;
    std::vector<double> positions;
    // Per segment (size() + 1 of them) plane-wave coefficients.
    std::vector<Eigen::VectorXcd> right_moving;
    std::vector<Eigen::VectorXcd> left_moving;

    // Outgoing coefficients minus the free continuation of the incident wave:
    // plus = A_M - A_0, minus = B_0 - B_M.
    Eigen::VectorXcd scattered_plus;
    Eigen::VectorXcd scattered_minus;

    Eigen::VectorXd reflection;    // |B_0|^2 per channel (left exit)
    Eigen::VectorXd transmission;  // |A_M|^2 per channel (right exit)
    double incoming_flux = 0.0;
    double outgoing_flux = 0.0;
    double condition = 1.0;

    double flux_residual() const noexcept { return std::abs(outgoing_flux - incoming_flux); }
    // Summed channel density |psi(x)|^2 from the segment containing x.
    double density(double x) const;
};

inline constexpr double kMaxCondition = 1e12;

ScatteringSolution solve_scattering(const SiteArray& sites, const IncidentWave& incident);

// [in][out] with basis (ch1 +, ..., chn +, ch1 -, ..., chn -), "+" being the
// right-moving direction.
Eigen::MatrixXcd full_s_matrix(const SiteArray& sites, SpectralPoint k);

// Even / odd blocks (transposed to act on amplitude vectors) of a 2n x 2n
// [in][out] matrix.
Eigen::MatrixXcd even_block(const Eigen::MatrixXcd& s);
Eigen::MatrixXcd odd_block(const Eigen::MatrixXcd& s);

}  // namespace pointlab::channels
