#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "pointlab/pointcore.hpp"

// Hand-rolled generators for the property tests. Every test seeds its own
// engine so failures reproduce in isolation.
namespace testgen {

using pointlab::cplx;

inline std::mt19937_64 engine(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline pointlab::Couplings couplings(std::mt19937_64& rng, double bound = 5.0) {
    return {uniform(rng, -bound, bound), uniform(rng, -bound, bound), uniform(rng, -bound, bound)};
}

inline cplx gaussian_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    const double re = n(rng);
    return {re, n(rng)};
}

// Haar-distributed unit vector in C^2.
inline Eigen::Vector2cd unit_vector(std::mt19937_64& rng) {
    Eigen::Vector2cd v(gaussian_complex(rng), gaussian_complex(rng));
    return v / v.norm();
}

// Haar-random SU(2): normalized quaternion.
inline Eigen::Matrix2cd haar_su2(std::mt19937_64& rng) {
    const Eigen::Vector2cd v = unit_vector(rng);
    Eigen::Matrix2cd m;
    m << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
    return m;
}

inline Eigen::MatrixXcd hermitian(std::mt19937_64& rng, Eigen::Index n, double scale) {
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = gaussian_complex(rng);
    }
    return scale * 0.5 * (a + a.adjoint());
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testgen
