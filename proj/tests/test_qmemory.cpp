#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pointlab/qmemory.hpp"
#include "support.hpp"

using namespace pointlab;
using namespace pointlab::qmemory;
using std::numbers::pi;

namespace {

const cplx I(0.0, 1.0);
const double r2 = 1.0 / std::sqrt(2.0);

SpectralPoint sk(double v) { return SpectralPoint::scattering(v); }

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

Mat2 exp_sigma3(double t) {
    Mat2 m;
    m << std::polar(1.0, -t), 0.0, 0.0, std::polar(1.0, t);
    return m;
}

Mat2 exp_sigma1(double t) {
    Mat2 m;
    m << std::cos(t), -I * std::sin(t), -I * std::sin(t), std::cos(t);
    return m;
}

MemoryState random_state(std::mt19937_64& rng) { return MemoryState(testgen::unit_vector(rng)); }

Observables exact_observables(const MemoryState& a, const MemoryState& s, bool with_a4) {
    Observables o{observe(a, Observable::A1, s), observe(a, Observable::A2, s), observe(a, Observable::A3, s), {}};
    if (with_a4) o.a4 = standard_interference(a.vec(), reference_rotation(), s);
    return o;
}

// Independent uniqueness oracle: multi-start damped Gauss-Newton in angle
// coordinates a = (cos t e^{i u}, sin t e^{i v}) with finite-difference
// Jacobians, started from a grid over the state sphere. Returns the distinct
// exact solutions it finds.
std::vector<Vec2> brute_force_solutions(const Observables& obs, const MemoryState& s) {
    auto state = [](const Eigen::Vector3d& p) {
        return Vec2(std::polar(std::cos(p(0)), p(1)), std::polar(std::sin(p(0)), p(2)));
    };
    auto residual = [&](const Eigen::Vector3d& p) {
        const Vec2 a = state(p);
        Eigen::Vector4d r;
        r(0) = std::norm(a(0)) - std::norm(a(1)) - obs.a1;
        r(1) = 2.0 * (std::conj(a(0)) * a(1)).real() - obs.a2;
        const Vec2 u = a + s.vec();
        r(2) = std::norm(u(0)) - std::norm(u(1)) - obs.a3;
        const Vec2 w = reference_rotation() * a + s.vec();
        r(3) = obs.a4 ? std::norm(w(0)) - std::norm(w(1)) - *obs.a4 : 0.0;
        return r;
    };
    std::vector<Vec2> found;
    const int nt = 7, nu = 10, nv = 10;
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nu; ++j) {
            for (int l = 0; l < nv; ++l) {
                Eigen::Vector3d p((i + 0.5) * (pi / 2) / nt, 2 * pi * j / nu, 2 * pi * l / nv);
                double lambda = 1e-3;
                Eigen::Vector4d r = residual(p);
                for (int it = 0; it < 80 && r.norm() > 1e-13; ++it) {
                    Eigen::Matrix<double, 4, 3> jac;
                    for (int c = 0; c < 3; ++c) {
                        Eigen::Vector3d h = Eigen::Vector3d::Zero();
                        h(c) = 1e-7;
                        jac.col(c) = (residual(p + h) - residual(p - h)) / 2e-7;
                    }
                    Eigen::Matrix3d a = jac.transpose() * jac;
                    a.diagonal().array() += lambda;
                    const Eigen::Vector3d step = a.ldlt().solve(-jac.transpose() * r);
                    const Eigen::Vector4d rt = residual(p + step);
                    if (rt.norm() < r.norm()) {
                        p += step;
                        r = rt;
                        lambda = std::max(lambda * 0.3, 1e-12);
                    } else {
                        lambda *= 10;
                    }
                }
                if (r.norm() > 1e-9) continue;
                const Vec2 a = state(p);
                bool dup = false;
                for (const Vec2& f : found) dup = dup || (f - a).norm() < 1e-5;
                if (!dup) found.push_back(a);
            }
        }
    }
    return found;
}

}  // namespace

TEST_SUITE("qmemory") {

TEST_CASE("memory states are validated") {
    CHECK_THROWS_AS(MemoryState(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(MemoryState(std::nan(""), 0.0), InvalidArgument);
    CHECK_NOTHROW(MemoryState(0.6, 0.8 * I));
    const MemoryState n = MemoryState::normalized(3.0, 4.0 * I);
    CHECK(std::abs(n.a1() - 0.6) < 1e-15);
    const MemoryState s = MemoryState::standard();
    CHECK(std::abs(s.a1() - r2) < 1e-15);
    CHECK(std::abs(s.a2() - std::polar(r2, pi / 4)) < 1e-15);
    CHECK(distance_up_to_phase(s, MemoryState(I * s.vec())) < 1e-15);
    CHECK(distance(s, MemoryState(I * s.vec())) > 0.5);
}

TEST_CASE("odd op with g3=2 at k=1 on (1,0)") {
    const MemoryState out = apply_scatter(MemoryState(1.0, 0.0), {Parity::Odd, sk(1.0)}, 1.0, 2.0);
    CHECK(std::abs(out.a1() + I) < 1e-15);
    CHECK(std::abs(out.a2()) < 1e-15);
}

TEST_CASE("even op with g1=2 at k=1 on (1,0)") {
    const MemoryState out = apply_scatter(MemoryState(1.0, 0.0), {Parity::Even, sk(1.0)}, 2.0, 1.0);
    CHECK(std::abs(out.a1()) < 1e-15);
    CHECK(std::abs(out.a2() + I) < 1e-15);
}

TEST_CASE("ops with a zero coupling leave the state alone") {
    const MemoryState s = MemoryState::standard();
    for (double k : {0.1, 1.0, 7.0}) {
        CHECK(distance(apply_scatter(s, {Parity::Odd, sk(k)}, 1.0, 0.0), s) == 0.0);
        CHECK(distance(apply_scatter(s, {Parity::Even, sk(k)}, 0.0, 1.0), s) == 0.0);
    }
}

TEST_CASE("op matrices are the stated rotations (property)") {
    auto rng = testgen::engine(41);
    for (int i = 0; i < 200; ++i) {
        const double g1 = testgen::uniform(rng, -4, 4), g3 = testgen::uniform(rng, -4, 4);
        const double k = testgen::log_uniform(rng, 0.05, 20);
        const ScatterOp odd{Parity::Odd, sk(k)}, even{Parity::Even, sk(k)};
        CHECK(max_abs(odd_matrix(g3, sk(k)) - exp_sigma3(2 * std::atan(g3 * k / 2))) < 1e-14);
        CHECK(max_abs(even_matrix(g1, sk(k)) - exp_sigma1(2 * std::atan(g1 / (2 * k)))) < 1e-14);
        CHECK(std::abs(std::polar(1.0, op_phase(odd, g1, g3)) - odd_phase(g3, sk(k))) < 1e-14);
        CHECK(std::abs(std::polar(1.0, op_phase(even, g1, g3)) - even_phase(g1, sk(k))) < 1e-14);
    }
}

TEST_CASE("plan matrices") {
    CHECK(max_abs(plan_matrix({}, 1.0, 1.0) - Mat2::Identity()) == 0.0);
    CHECK(max_abs(plan_matrix({{Parity::Odd, sk(1.0)}}, 1.0, 2.0) - exp_sigma3(pi / 2)) < 1e-15);
    // Ordered product: the last op acts first.
    const Plan p{{Parity::Odd, sk(0.3)}, {Parity::Even, sk(0.9)}};
    const MemoryState s = MemoryState::standard();
    const Vec2 by_hand = odd_matrix(1.5, sk(0.3)) * (even_matrix(0.7, sk(0.9)) * s.vec());
    CHECK((apply_plan(s, p, 0.7, 1.5).vec() - by_hand).norm() < 1e-15);
    CHECK((plan_matrix(p, 0.7, 1.5) * s.vec() - by_hand).norm() < 1e-15);
}

TEST_CASE("a plan followed by its inverse is the identity (property)") {
    auto rng = testgen::engine(42);
    for (int i = 0; i < 300; ++i) {
        const double g1 = testgen::uniform(rng, -3, 3), g3 = testgen::uniform(rng, -3, 3);
        Plan plan;
        for (int j = 0; j < 1 + i % 6; ++j) {
            plan.push_back({j % 2 ? Parity::Even : Parity::Odd, sk(testgen::log_uniform(rng, 0.1, 10))});
        }
        Plan both = plan;
        const Plan inv = inverse_plan(plan, g1, g3);
        both.insert(both.end(), inv.begin(), inv.end());
        CHECK(max_abs(plan_matrix(both, g1, g3) - Mat2::Identity()) <= 1e-12);
    }
}

TEST_CASE("rotation ops realize any angle with at most two ops (property)") {
    auto rng = testgen::engine(43);
    for (int i = 0; i < 500; ++i) {
        const double g1 = testgen::uniform(rng, -3, 3), g3 = testgen::uniform(rng, -3, 3);
        const double theta = testgen::uniform(rng, -10, 10);
        for (Parity p : {Parity::Odd, Parity::Even}) {
            const Plan ops = rotation_ops(p, theta, g1, g3);
            CHECK(ops.size() <= 2);
            for (const auto& op : ops) CHECK(op.parity == p);
            const Mat2 want = p == Parity::Odd ? exp_sigma3(theta) : exp_sigma1(theta);
            CHECK(max_abs(plan_matrix(ops, g1, g3) - want) <= 1e-12);
        }
    }
    CHECK(rotation_ops(Parity::Odd, 0.0, 1.0, 1.0).empty());
    CHECK(rotation_ops(Parity::Odd, 2 * pi, 1.0, 1.0).empty());
    CHECK_THROWS_AS(rotation_ops(Parity::Odd, 0.5, 1.0, 0.0), ZeroCoupling);
}

TEST_CASE("factorize: identity and a single odd rotation") {
    CHECK(factorize_su2(Mat2::Identity(), 1.0, 1.0).empty());
    const Plan p = factorize_su2(exp_sigma3(pi / 2), 1.0, 2.0);
    REQUIRE(p.size() == 1);
    CHECK(p[0].parity == Parity::Odd);
    CHECK(std::fabs(p[0].k.value() - 1.0) < 1e-15);
}

TEST_CASE("factorize: Haar-random targets round-trip (property)") {
    auto rng = testgen::engine(44);
    double worst = 0.0;
    std::size_t longest = 0;
    for (int i = 0; i < 1000; ++i) {
        const Mat2 u = testgen::haar_su2(rng);
        const Plan p = factorize_su2(u, 1.0, 1.0);
        worst = std::max(worst, max_abs(plan_matrix(p, 1.0, 1.0) - u));
        longest = std::max(longest, p.size());
        for (const auto& op : p) CHECK(op.k.value() > 0.0);
    }
    CHECK(worst <= 1e-9);
    CHECK(longest <= 6);
}

TEST_CASE("factorize works for either coupling sign") {
    auto rng = testgen::engine(45);
    for (int i = 0; i < 200; ++i) {
        const double g1 = (i % 2 ? -1 : 1) * testgen::log_uniform(rng, 0.1, 10);
        const double g3 = (i % 4 < 2 ? -1 : 1) * testgen::log_uniform(rng, 0.1, 10);
        const Mat2 u = testgen::haar_su2(rng);
        const Plan p = factorize_su2(u, g1, g3);
        CHECK(max_abs(plan_matrix(p, g1, g3) - u) <= 1e-9);
        CHECK(p.size() <= 6);
    }
}

TEST_CASE("factorize rejects bad input") {
    CHECK_THROWS_AS(factorize_su2(2.0 * Mat2::Identity(), 1.0, 1.0), NotSpecialUnitary);
    CHECK_THROWS_AS(factorize_su2(I * Mat2::Identity(), 1.0, 1.0), NotSpecialUnitary);  // det = -1
    CHECK_THROWS_AS(factorize_su2(Mat2::Identity(), 0.0, 1.0), ZeroCoupling);
    CHECK_THROWS_AS(factorize_su2(Mat2::Identity(), 1.0, 0.0), ZeroCoupling);
}

TEST_CASE("write and reset") {
    const MemoryState s = MemoryState::standard();
    CHECK(write(s, s, 2.0, 2.0).empty());
    const Plan p = write(MemoryState(1.0, 0.0), MemoryState(0.0, -I), 2.0, 1.0);
    REQUIRE(p.size() == 1);
    CHECK(p[0].parity == Parity::Even);
    CHECK(std::fabs(p[0].k.value() - 1.0) < 1e-15);

    auto rng = testgen::engine(46);
    for (int i = 0; i < 500; ++i) {
        const MemoryState a = random_state(rng), b = random_state(rng);
        const double g1 = testgen::uniform(rng, 0.2, 4), g3 = -testgen::uniform(rng, 0.2, 4);
        CHECK(distance_up_to_phase(b, apply_plan(a, write(a, b, g1, g3), g1, g3)) <= 1e-9);
        CHECK(distance_up_to_phase(a, apply_plan(b, reset(b, a, g1, g3), g1, g3)) <= 1e-9);
    }
}

TEST_CASE("interference patterns") {
    const std::vector<double> quarter{pi / 4};
    CHECK(std::fabs(interference_pattern(MemoryState(1.0, 0.0), {Parity::Odd, sk(1.0)}, 1.0, 2.0, quarter)[0] - 4.0) <
          1e-14);

    std::vector<double> xs;
    for (int i = 1; i <= 40; ++i) xs.push_back(0.07 * i);
    // Balanced state: no sin 2kx term, so the pattern is even about x = pi/(2k).
    const double k = 0.9;
    const auto bal = interference_pattern(MemoryState(r2, r2), {Parity::Odd, sk(k)}, 1.0, 1.7, xs);
    const double phi = -2 * std::atan(1.7 * k / 2);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        CHECK(std::fabs(bal[i] - 2 * (1 + std::cos(2 * k * xs[i]) * std::cos(phi))) < 1e-14);
    }
    const auto free_odd = interference_pattern(MemoryState::standard(), {Parity::Odd, sk(k)}, 1.0, 0.0, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::fabs(free_odd[i] - 2 * (1 + std::cos(2 * k * xs[i]))) < 1e-14);
    CHECK_THROWS_AS(interference_pattern(MemoryState::standard(), {Parity::Odd, sk(k)}, 1, 1, {0.0}), InvalidArgument);
}

TEST_CASE("observables of named states") {
    const MemoryState up(1.0, 0.0);
    CHECK(observe(up, Observable::A1, up) == 1.0);
    CHECK(observe(up, Observable::A2, up) == 0.0);
    const MemoryState circ(r2, I * r2);
    CHECK(std::fabs(observe(circ, Observable::A1, up)) < 1e-15);
    CHECK(std::fabs(observe(circ, Observable::A2, up)) < 1e-15);
    // |a1 + 1|^2 - |a2|^2 = (1/sqrt2 + 1)^2 - 1/2.
    CHECK(std::fabs(observe(circ, Observable::A3, up) - (1.0 + std::sqrt(2.0))) < 1e-14);
    CHECK(std::fabs(observe(MemoryState(r2, r2), Observable::A2, up) - 1.0) < 1e-15);
}

TEST_CASE("pattern estimator") {
    const double k = 1.0, phi = -pi / 2;
    std::vector<double> xs;
    for (int i = 0; i < 256; ++i) xs.push_back((i + 0.5) * pi / 256);
    auto samples_of = [&](const MemoryState& m, double sigma, std::uint64_t seed) {
        const auto v = interference_pattern(m, {Parity::Odd, sk(k)}, 1.0, 2.0, xs);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> n(0.0, sigma);
        std::vector<Sample> out;
        for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({xs[i], v[i] + (sigma > 0 ? n(rng) : 0.0)});
        return out;
    };
    CHECK(std::fabs(estimate_from_pattern(samples_of(MemoryState(1.0, 0.0), 0.0, 0), sk(k), phi) - 1.0) < 1e-10);
    CHECK(std::fabs(estimate_from_pattern(samples_of(MemoryState(r2, r2), 0.0, 0), sk(k), phi)) < 1e-10);
    auto rng = testgen::engine(47);
    for (int i = 0; i < 100; ++i) {
        const MemoryState m = random_state(rng);
        const double a1 = observe(m, Observable::A1, m);
        CHECK(std::fabs(estimate_from_pattern(samples_of(m, 1e-4, 100 + i), sk(k), phi) - a1) < 1e-3);
    }
    CHECK_THROWS_AS(estimate_from_pattern(samples_of(MemoryState(1.0, 0.0), 0.0, 0), sk(k), 0.0), PhaseBlind);
    CHECK_THROWS_AS(estimate_from_pattern({{0.1, 1.0}, {0.2, 1.0}}, sk(k), phi), DegenerateSampling);
    CHECK_THROWS_AS(estimate_from_pattern({{0.1, 1.0}, {0.1, 1.0}, {0.1 + pi, 1.0}}, sk(k), phi), DegenerateSampling);
}

TEST_CASE("reconstruction of basis states") {
    const MemoryState s = MemoryState::standard();
    const MemoryState up(1.0, 0.0);
    // (1,0) is recovered from A1..A3 alone: the phase branch collapses.
    CHECK(distance(reconstruct_state(exact_observables(up, s, false), s), up) <= 1e-9);
    CHECK(distance(reconstruct_state(exact_observables(up, s, true), s), up) <= 1e-9);
    // A1 = 1 leaves (e^{i phi}, 0); A3 pins cos(phi - arg s1), A4 the sign.
    for (double phi : {0.4, 1.3, -2.2, 3.0}) {
        const MemoryState m(std::polar(1.0, phi), 0.0);
        CHECK(distance(reconstruct_state(exact_observables(m, s, true), s), m) <= 1e-9);
    }
}

TEST_CASE("without A4 generic states are ambiguous, and every candidate fits") {
    const MemoryState s = MemoryState::standard();
    auto rng = testgen::engine(48);
    int ambiguous = 0;
    for (int i = 0; i < 50; ++i) {
        const MemoryState m = random_state(rng);
        const Observables obs = exact_observables(m, s, false);
        try {
            const MemoryState r = reconstruct_state(obs, s);
            CHECK(distance(r, m) <= 1e-9);
        } catch (const Ambiguous& e) {
            ++ambiguous;
            CHECK(e.candidates().size() >= 2);
            CHECK(e.candidates().size() <= 4);
            bool has_truth = false;
            for (const auto& [c1, c2] : e.candidates()) {
                const MemoryState c = MemoryState::normalized(c1, c2);
                CHECK(std::fabs(observe(c, Observable::A3, s) - obs.a3) < 1e-6);
                has_truth = has_truth || distance(c, m) < 1e-6;
            }
            CHECK(has_truth);
        }
    }
    CHECK(ambiguous > 25);
}

TEST_CASE("brute-force oracle: A4 makes the solution unique") {
    const MemoryState s = MemoryState::standard();
    auto rng = testgen::engine(49);
    for (int i = 0; i < 6; ++i) {
        const MemoryState m = random_state(rng);
        const auto with = brute_force_solutions(exact_observables(m, s, true), s);
        REQUIRE(with.size() == 1);
        CHECK((with[0] - m.vec()).norm() < 1e-7);
        // Without A4 the same search finds a second exact solution.
        const auto without = brute_force_solutions(exact_observables(m, s, false), s);
        CHECK(without.size() >= 2);
    }
}

TEST_CASE("reconstruction round-trips Haar-random states with A4 (property)") {
    const MemoryState s = MemoryState::standard();
    auto rng = testgen::engine(50);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const MemoryState m = random_state(rng);
        worst = std::max(worst, distance(reconstruct_state(exact_observables(m, s, true), s), m));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("reconstruction rejects inconsistent observables") {
    const MemoryState s = MemoryState::standard();
    Observables obs = exact_observables(MemoryState(0.6, 0.8), s, true);
    obs.a3 += 0.5;
    CHECK_THROWS_AS(reconstruct_state(obs, s), Inconsistent);
    CHECK_THROWS_AS(reconstruct_state({1.5, 0.0, 0.0, {}}, s), InvalidArgument);
    CHECK_THROWS_AS(reconstruct_state({0.8, 0.8, 0.0, {}}, s), InvalidArgument);
    CHECK_THROWS_AS(reconstruct_state({0.0, 0.0, 0.0, {}}, MemoryState(1.0, 0.0)), InvalidArgument);
}

TEST_CASE("read protocol on named states") {
    const MemoryState s = MemoryState::standard();
    const ReadResult up = read_protocol(MemoryState(1.0, 0.0), s, 2.0, 2.0);
    CHECK(distance(up.recovered, MemoryState(1.0, 0.0)) <= 1e-9);
    CHECK(up.restoration_error <= 1e-9);
    const ReadResult circ = read_protocol(MemoryState(r2, I * r2), s, 2.0, 2.0);
    CHECK(std::fabs(circ.observed.a1) < 1e-10);
    CHECK(std::fabs(circ.observed.a2) < 1e-10);
    REQUIRE(circ.observed.a4.has_value());
    // The log interleaves interrogation, measurement and restoration.
    std::vector<std::string> measured;
    for (const auto& ev : circ.log) {
        if (ev.action == "measure") measured.push_back(ev.label);
    }
    CHECK(measured == std::vector<std::string>{"A1", "A2", "A3", "A4"});
    CHECK(circ.log.back().action == "reconstruct");
    CHECK_THROWS_AS(read_protocol(s, s, 0.0, 1.0), ZeroCoupling);
}

TEST_CASE("read protocol: noiseless and noisy random states (property)") {
    const MemoryState s = MemoryState::standard();
    auto rng = testgen::engine(51);
    double worst_clean = 0.0, worst_restore = 0.0, worst_noisy = 0.0;
    for (int i = 0; i < 200; ++i) {
        const MemoryState m = random_state(rng);
        const double g1 = (i % 2 ? 1 : -1) * testgen::uniform(rng, 0.5, 3);
        const double g3 = (i % 3 ? 1 : -1) * testgen::uniform(rng, 0.5, 3);
        const ReadResult clean = read_protocol(m, s, g1, g3);
        worst_clean = std::max(worst_clean, clean.recovery_error);
        worst_restore = std::max(worst_restore, clean.restoration_error);
        const ReadResult noisy = read_protocol(m, s, g1, g3, {1e-4, 1024, static_cast<std::uint64_t>(i)});
        worst_noisy = std::max(worst_noisy, noisy.recovery_error);
        CHECK(noisy.restoration_error <= 1e-9);
    }
    CHECK(worst_clean <= 1e-9);
    CHECK(worst_restore <= 1e-9);
    CHECK(worst_noisy <= 1e-3);
}

TEST_CASE("read protocol is deterministic for a seed") {
    const MemoryState m(0.6, 0.8 * I);
    const ReadResult a = read_protocol(m, MemoryState::standard(), 1.0, 1.0, {1e-3, 512, 9});
    const ReadResult b = read_protocol(m, MemoryState::standard(), 1.0, 1.0, {1e-3, 512, 9});
    CHECK(a.observed.a1 == b.observed.a1);
    CHECK(a.observed.a3 == b.observed.a3);
    CHECK(a.recovered.vec() == b.recovered.vec());
}

TEST_CASE("admissibility") {
    const std::vector<MemoryState> states{MemoryState(1.0, 0.0), MemoryState(0.0, 1.0), MemoryState::standard(),
                                          MemoryState(0.6, 0.8 * I)};
    const auto even = admissibility_check(1.0, 0.0, sk(1.0), 2.0, 2.0, states);
    CHECK(std::fabs(even.purity - 1.0) <= 1e-12);
    CHECK(even.admissible);
    const auto odd = admissibility_check(0.0, 1.0, sk(0.7), 2.0, 2.0, states);
    CHECK(std::fabs(odd.purity - 1.0) <= 1e-12);
    CHECK(odd.admissible);

    const auto mixed = admissibility_check(r2, r2, sk(1.0), 2.0, 2.0, {MemoryState(1.0, 0.0)});
    CHECK(std::fabs(mixed.purity - 0.5) <= 1e-12);
    CHECK_FALSE(mixed.admissible);
    CHECK(std::abs(mixed.density.trace() - 1.0) < 1e-15);

    // Free case: S+ = S- = I, every weighting is admissible.
    auto rng = testgen::engine(52);
    for (int i = 0; i < 20; ++i) {
        const Vec2 w = testgen::unit_vector(rng);
        CHECK(admissibility_check(w(0), w(1), sk(testgen::log_uniform(rng, 0.1, 10)), 0.0, 0.0, states).admissible);
    }
    CHECK_THROWS_AS(admissibility_check(1.0, 1.0, sk(1.0), 1, 1, states), InvalidArgument);
    CHECK_THROWS_AS(admissibility_check(1.0, 0.0, sk(1.0), 1, 1, {}), InvalidArgument);
}

}  // TEST_SUITE
