#include <doctest.h>

#include <Eigen/SVD>

#include "espsim/liouvillian.hpp"
#include "test_util.hpp"

using namespace espsim;
using testutil::fig2_params;
using testutil::random_params;

namespace {

ComplexMatrix random_hermitian(int d) {
    std::normal_distribution<double> dist(0.0, 1.0);
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = {dist(testutil::rng()), dist(testutil::rng())};
    return 0.5 * (m + m.adjoint()).eval();
}

ComplexMatrix random_density(int d) {
    ComplexMatrix m = random_hermitian(d);
    m = (m * m.adjoint()).eval();  // positive semidefinite
    return m / m.trace();
}

}  // namespace

TEST_CASE("jump set: n+3 equal channels summing to gamma") {
    SystemParams p = fig2_params();
    auto jumps = build_jump_set(p);
    REQUIRE(jumps.size() == 4);
    for (const auto& j : jumps) {
        CHECK(j.rate == doctest::Approx(p.gamma / 4.0).epsilon(1e-15));
        CHECK(j.from_index == 3);
    }

    p.n = 15;
    jumps = build_jump_set(p);
    REQUIRE(jumps.size() == 18);
    double sum = 0.0;
    for (const auto& j : jumps) sum += j.rate;
    CHECK(std::abs(sum - p.gamma) < 1e-12);

    p.gamma = 0.0;
    p.n = 1;
    jumps = build_jump_set(p);
    REQUIRE(jumps.size() == 4);
    for (const auto& j : jumps) CHECK(j.rate == 0.0);
}

TEST_CASE("dissipator vanishes without excited population") {
    const SystemParams p = fig2_params();
    const auto jumps = build_jump_set(p);
    const int d = p.dim();
    ComplexMatrix rho = random_density(d);
    rho.row(3).setZero();
    rho.col(3).setZero();
    rho /= rho.trace();
    CHECK(dissipator_action(rho, jumps).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("dissipator on |e><e|: hand-evaluated diagonal") {
    const SystemParams p = fig2_params();  // n = 1, gamma = 2pi*10
    const auto jumps = build_jump_set(p);
    const int d = p.dim();
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    rho(3, 3) = 1.0;
    const ComplexMatrix out = dissipator_action(rho, jumps);
    const double q = p.gamma / 4.0;
    // order (b, a, c, e, x1)
    CHECK(out(0, 0).real() == doctest::Approx(q));
    CHECK(out(1, 1).real() == doctest::Approx(q));
    CHECK(out(2, 2).real() == doctest::Approx(q));
    CHECK(out(3, 3).real() == doctest::Approx(-p.gamma));
    CHECK(out(4, 4).real() == doctest::Approx(q));
    CHECK(std::abs(out.trace()) < 1e-12);
}

TEST_CASE("dissipator output is traceless on random Hermitian input") {
    const SystemParams p = fig2_params();
    const auto jumps = build_jump_set(p);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix rho = random_hermitian(p.dim());
        CHECK(std::abs(dissipator_action(rho, jumps).trace()) <
              1e-10 * p.gamma * rho.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("collision term fixed point and scaling") {
    const int d = 5;
    const double kappa = mhz_to_angular(0.001);
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    CHECK(collision_action(id / double(d), kappa, d).cwiseAbs().maxCoeff() <
          1e-16);
    CHECK(collision_action(random_density(d), 0.0, d).cwiseAbs().maxCoeff() ==
          0.0);

    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    rho(1, 1) = 1.0;  // |a><a|
    const ComplexMatrix out = collision_action(rho, kappa, d);
    CHECK(out(0, 0).real() == doctest::Approx(kappa / 5.0));
    CHECK(out(1, 1).real() == doctest::Approx(-4.0 * kappa / 5.0));
    CHECK(out(2, 2).real() == doctest::Approx(kappa / 5.0));
}

TEST_CASE("apply_rhs: zero generator gives zero") {
    SystemParams p;
    p.n = 1;
    const Liouvillian L = make_liouvillian(p, Handedness::Left);
    const ComplexMatrix rho = random_density(p.dim());
    CHECK(apply_rhs(L, rho).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apply_rhs output is Hermitian and traceless") {
    for (int trial = 0; trial < 20; ++trial) {
        const SystemParams p = random_params();
        const Liouvillian L = make_liouvillian(p, Handedness::Right);
        const ComplexMatrix rho = random_density(p.dim());
        const ComplexMatrix out = apply_rhs(L, rho);
        CHECK((out - out.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(out.trace()) < 1e-10);
    }
}

TEST_CASE("apply_rhs annihilates trace for non-normalized Hermitian input") {
    const SystemParams p = fig2_params(0.001);
    const Liouvillian L = make_liouvillian(p, Handedness::Left);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix rho = random_hermitian(p.dim());
        CHECK(std::abs(apply_rhs(L, rho).trace()) <
              1e-9 * rho.cwiseAbs().maxCoeff() * mhz_to_angular(20.0));
    }
}

TEST_CASE("apply_rhs rejects dimension mismatch") {
    const SystemParams p = fig2_params();
    const Liouvillian L = make_liouvillian(p, Handedness::Left);
    CHECK_THROWS_AS(apply_rhs(L, ComplexMatrix::Zero(3, 3)), DimensionMismatch);
}

TEST_CASE("assembled superoperator agrees with the matrix-free action") {
    const SystemParams p = fig2_params(0.001);
    const Liouvillian L = make_liouvillian(p, Handedness::Right);
    const int d = L.dim;
    const ComplexMatrix sup = assemble_matrix(L);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix rho = random_hermitian(d);
        const Eigen::Map<ComplexVector> v(rho.data(), d * d);
        const ComplexVector lv = sup * v;
        ComplexMatrix direct = apply_rhs(L, rho);
        const Eigen::Map<ComplexVector> dv(direct.data(), d * d);
        CHECK((lv - dv).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("vec(I) is a left null functional of the superoperator") {
    const SystemParams p = fig2_params(0.001);
    const Liouvillian L = make_liouvillian(p, Handedness::Left);
    const ComplexMatrix sup = assemble_matrix(L);
    const int d = L.dim;
    ComplexVector vecid = ComplexVector::Zero(d * d);
    for (int i = 0; i < d; ++i) vecid(i * d + i) = 1.0;
    CHECK((vecid.adjoint() * sup).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("null space is one-dimensional for kappa > 0 at Fig. 2 parameters") {
    const SystemParams p = fig2_params(0.001);
    const Liouvillian L = make_liouvillian(p, Handedness::Right);
    const ComplexMatrix sup = assemble_matrix(L);
    Eigen::JacobiSVD<ComplexMatrix> svd(sup);
    const auto& sv = svd.singularValues();
    const double scale = sv(0);
    int below = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) < 1e-10 * scale) ++below;
    CHECK(below == 1);
}

TEST_CASE("assemble_matrix honors the dimension cap") {
    const SystemParams p = fig2_params(0.001);
    const Liouvillian L = make_liouvillian(p, Handedness::Left);
    CHECK_THROWS_AS(assemble_matrix(L, 4), CapExceeded);
}
