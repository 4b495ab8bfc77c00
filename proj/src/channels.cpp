#include "pointlab/channels.hpp"

#include <cmath>
#include <limits>

namespace pointlab::channels {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr cplx I(0.0, 1.0);

bool is_hermitian(const MatrixXcd& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-12; }

Index offset_right_moving(Index s, Index n) { return n * (2 * s - 1); }
Index offset_left_moving(Index s, Index n) { return n * (2 * s); }

struct Blocks {
    // Coefficient blocks of A_L, B_L, A_R, B_R in the slope rows (scaled by
    // 1/k) and the value rows.
    MatrixXcd slope[4];
    MatrixXcd value[4];
};

Blocks site_blocks(const Site& site, double k) {
    const MatrixCouplings& c = site.couplings;
    const Index n = c.channels();
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const cplx e = std::exp(I * (k * site.position));
    const cplx eb = std::conj(e);
    const MatrixXcd half_c1 = c.c1 / (2.0 * k);
    const MatrixXcd half_c2 = c.c2 / 2.0;
    const MatrixXcd c3k = (I * k / 2.0) * c.c3;

    Blocks b;
    b.slope[0] = e * (-I * id - half_c1 + I * half_c2);
    b.slope[1] = eb * (I * id - half_c1 - I * half_c2);
    b.slope[2] = e * (I * id - half_c1 + I * half_c2);
    b.slope[3] = eb * (-I * id - half_c1 - I * half_c2);
    b.value[0] = e * (-id - half_c2 + c3k);
    b.value[1] = eb * (-id - half_c2 - c3k);
    b.value[2] = e * (id - half_c2 + c3k);
    b.value[3] = eb * (id - half_c2 - c3k);
    return b;
}

MatrixXcd assemble_matrix(const SiteArray& sites, double k) {
    const Index n = sites.channels();
    const Index m = static_cast<Index>(sites.size());
    const Index dim = 2 * n * m;
    MatrixXcd a = MatrixXcd::Zero(dim, dim);
    for (Index site = 1; site <= m; ++site) {
        const Blocks b = site_blocks(sites[static_cast<std::size_t>(site - 1)], k);
        const Index row = 2 * n * (site - 1);
        const Index left = site - 1;
        const Index right = site;
        // Coefficients of the known incoming amplitudes go to the right-hand
        // side instead.
        const Index cols[4] = {left >= 1 ? offset_right_moving(left, n) : -1, offset_left_moving(left, n),
                               offset_right_moving(right, n), right < m ? offset_left_moving(right, n) : -1};
        for (int j = 0; j < 4; ++j) {
            if (cols[j] < 0) continue;
            a.block(row, cols[j], n, n) = b.slope[j];
            a.block(row + n, cols[j], n, n) = b.value[j];
        }
    }
    return a;
}

VectorXcd assemble_rhs(const SiteArray& sites, double k, const VectorXcd& in_left, const VectorXcd& in_right) {
    const Index n = sites.channels();
    const Index m = static_cast<Index>(sites.size());
    VectorXcd rhs = VectorXcd::Zero(2 * n * m);
    if (m == 0) return rhs;
    const Blocks first = site_blocks(sites[0], k);
    rhs.segment(0, n) -= first.slope[0] * in_left;
    rhs.segment(n, n) -= first.value[0] * in_left;
    const Blocks last = site_blocks(sites[static_cast<std::size_t>(m - 1)], k);
    const Index row = 2 * n * (m - 1);
    rhs.segment(row, n) -= last.slope[3] * in_right;
    rhs.segment(row + n, n) -= last.value[3] * in_right;
    return rhs;
}

struct Factored {
    Eigen::PartialPivLU<MatrixXcd> lu;
    double condition = 1.0;
};

Factored factor(const MatrixXcd& a) {
    Factored f;
    if (a.rows() == 0) return f;
    f.lu.compute(a);
    const double rc = f.lu.rcond();
    f.condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(f.condition <= kMaxCondition)) throw SingularSystem(f.condition);
    return f;
}

void check_channels(const SiteArray& sites, const VectorXcd& amplitudes) {
    if (amplitudes.size() != sites.channels()) {
        throw InvalidArgument("incident amplitude vector does not match the channel count");
    }
}

}  // namespace

MatrixCouplings MatrixCouplings::scalar(const Couplings& g) {
    g.validate();
    MatrixCouplings c;
    c.c1 = MatrixXcd::Constant(1, 1, g.g1);
    c.c2 = MatrixXcd::Constant(1, 1, g.g2);
    c.c3 = MatrixXcd::Constant(1, 1, g.g3);
    return c;
}

MatrixCouplings MatrixCouplings::zero(Index n) {
    return {MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n)};
}

void MatrixCouplings::validate() const {
    const Index n = c1.rows();
    if (n < 1) throw InvalidArgument("coupling matrices need at least one channel");
    for (const MatrixXcd* m : {&c1, &c2, &c3}) {
        if (m->rows() != n || m->cols() != n) throw InvalidArgument("coupling matrices must share shape n x n");
        if (!m->allFinite()) throw InvalidArgument("coupling matrices must be finite");
        if (!is_hermitian(*m)) throw InvalidArgument("coupling matrices must be hermitian");
    }
}

SiteArray::SiteArray(Index n) : n_(n) {
    if (n < 1) throw InvalidArgument("channel count must be >= 1");
}

SiteArray::SiteArray(std::vector<Site> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) throw InvalidArgument("use SiteArray(n) for an empty array");
    n_ = sites_.front().couplings.channels();
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        sites_[i].couplings.validate();
        if (sites_[i].couplings.channels() != n_) throw InvalidArgument("sites must share the channel count");
        if (!std::isfinite(sites_[i].position)) throw InvalidArgument("site positions must be finite");
        if (i > 0 && !(sites_[i].position - sites_[i - 1].position > kMinSeparation)) {
            throw InvalidArgument("site positions must increase by more than 1e-9");
        }
    }
}

IncidentWave::IncidentWave(SpectralPoint k_, IncidentMode mode_, Eigen::VectorXcd amplitudes_)
    : k(k_), mode(mode_), amplitudes(std::move(amplitudes_)) {
    if (k.kind() != SpectralKind::Scattering) throw InvalidArgument("incident wave needs a scattering wavenumber");
    if (amplitudes.size() < 1 || std::fabs(amplitudes.norm() - 1.0) > 1e-12) {
        throw InvalidArgument("incident amplitude vector must have unit norm");
    }
}

VectorXcd IncidentWave::incoming_left() const {
    if (mode == IncidentMode::FromRight) return VectorXcd::Zero(amplitudes.size());
    return amplitudes;
}

VectorXcd IncidentWave::incoming_right() const {
    switch (mode) {
        case IncidentMode::FromLeft: return VectorXcd::Zero(amplitudes.size());
        case IncidentMode::Odd: return -amplitudes;
        default: return amplitudes;
    }
}

LinearSystem assemble_system(const SiteArray& sites, const IncidentWave& incident) {
    check_channels(sites, incident.amplitudes);
    const double k = incident.k.value();
    return {assemble_matrix(sites, k), assemble_rhs(sites, k, incident.incoming_left(), incident.incoming_right())};
}

ScatteringSolution solve_scattering(const SiteArray& sites, const IncidentWave& incident) {
    const LinearSystem sys = assemble_system(sites, incident);
    const Factored f = factor(sys.matrix);
    const VectorXcd x = sys.matrix.rows() == 0 ? VectorXcd() : VectorXcd(f.lu.solve(sys.rhs));

    const Index n = sites.channels();
    const Index m = static_cast<Index>(sites.size());
    ScatteringSolution out;
    out.k = incident.k.value();
    out.condition = f.condition;
    for (const Site& s : sites.sites()) out.positions.push_back(s.position);

    const VectorXcd in_left = incident.incoming_left();
    const VectorXcd in_right = incident.incoming_right();
    for (Index s = 0; s <= m; ++s) {
        out.right_moving.push_back(s == 0 ? in_left : VectorXcd(x.segment(offset_right_moving(s, n), n)));
        out.left_moving.push_back(s == m ? in_right : VectorXcd(x.segment(offset_left_moving(s, n), n)));
    }
    const VectorXcd& exit_right = out.right_moving.back();
    const VectorXcd& exit_left = out.left_moving.front();
    out.scattered_plus = exit_right - in_left;
    out.scattered_minus = exit_left - in_right;
    out.reflection = exit_left.cwiseAbs2();
    out.transmission = exit_right.cwiseAbs2();
    out.incoming_flux = in_left.squaredNorm() + in_right.squaredNorm();
    out.outgoing_flux = exit_left.squaredNorm() + exit_right.squaredNorm();
    return out;
}

double ScatteringSolution::density(double x) const {
    std::size_t seg = 0;
    while (seg < positions.size() && positions[seg] < x) ++seg;
    const cplx e = std::exp(I * (k * x));
    const VectorXcd psi = right_moving[seg] * e + left_moving[seg] * std::conj(e);
    return psi.squaredNorm();
}

MatrixXcd full_s_matrix(const SiteArray& sites, SpectralPoint k) {
    if (k.kind() != SpectralKind::Scattering) throw InvalidArgument("full_s_matrix needs a scattering wavenumber");
    const Index n = sites.channels();
    const Index m = static_cast<Index>(sites.size());
    if (m == 0) return MatrixXcd::Identity(2 * n, 2 * n);

    const double kv = k.value();
    const Factored f = factor(assemble_matrix(sites, kv));
    MatrixXcd rhs(2 * n * m, 2 * n);
    for (Index j = 0; j < n; ++j) {
        const VectorXcd unit = VectorXcd::Unit(n, j);
        const VectorXcd none = VectorXcd::Zero(n);
        rhs.col(j) = assemble_rhs(sites, kv, unit, none);
        rhs.col(n + j) = assemble_rhs(sites, kv, none, unit);
    }
    const MatrixXcd x = f.lu.solve(rhs);

    MatrixXcd s(2 * n, 2 * n);
    const Index exit_right = offset_right_moving(m, n);
    const Index exit_left = offset_left_moving(0, n);
    for (Index in = 0; in < 2 * n; ++in) {
        s.block(in, 0, 1, n) = x.col(in).segment(exit_right, n).transpose();
        s.block(in, n, 1, n) = x.col(in).segment(exit_left, n).transpose();
    }
    return s;
}

MatrixXcd even_block(const MatrixXcd& s) {
    const Index n = s.rows() / 2;
    const MatrixXcd b = 0.5 * (s.topLeftCorner(n, n) + s.topRightCorner(n, n) + s.bottomLeftCorner(n, n) +
                               s.bottomRightCorner(n, n));
    return b.transpose();
}

MatrixXcd odd_block(const MatrixXcd& s) {
    const Index n = s.rows() / 2;
    const MatrixXcd b = 0.5 * (s.topLeftCorner(n, n) - s.topRightCorner(n, n) - s.bottomLeftCorner(n, n) +
                               s.bottomRightCorner(n, n));
    return b.transpose();
}

}  // namespace pointlab::channels
