#include "helpers.hpp"

#include <cmath>

#include "weilkit/errors.hpp"
#include "weilkit/random.hpp"
#include "weilkit/symplectic.hpp"

using namespace weil;
using testing::m1;
using testing::mat;

TEST_CASE("symplectic form and membership") {
    const RMat J = symplectic_form(2);
    CHECK((J * J + RMat::Identity(4, 4)).norm() == doctest::Approx(0.0));
    CHECK(is_symplectic(RMat::Identity(4, 4)).ok);
    CHECK(is_symplectic(J).ok);
    CHECK_FALSE(is_symplectic(2.0 * RMat::Identity(2, 2)).ok);
    CHECK_THROWS_AS(is_symplectic(RMat::Identity(3, 3)), DimensionError);
    CHECK_THROWS_AS(SymplecticMatrix::from_matrix(2.0 * RMat::Identity(2, 2)), NotSymplecticError);
}

TEST_CASE("generators are symplectic with the expected blocks") {
    const RMat B = mat({{1.0, 0.5}, {0.5, -2.0}});
    const SymplecticMatrix s = generator_shear(B);
    CHECK((s.B() - B).norm() == doctest::Approx(0.0));
    CHECK(s.C().norm() == doctest::Approx(0.0));

    const RMat A = mat({{2.0, 1.0}, {0.0, 0.5}});
    const SymplecticMatrix g = generator_gl(A);
    CHECK((g.A() - A).norm() == doctest::Approx(0.0));
    CHECK((g.D() - A.transpose().inverse()).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(generator_gl(mat({{1.0, 2.0}, {2.0, 4.0}})), SingularMatrixError);
    CHECK_THROWS_AS(generator_shear(mat({{1.0, 2.0}, {0.0, 1.0}})), SymmetryError);

    const SymplecticMatrix F = generator_fourier(2);
    CHECK((F.matrix() - rotation(2, -pi / 2).matrix()).norm() < 1e-14);
    CHECK(is_symplectic(F.matrix()).ok);
}

TEST_CASE("composition and inverse") {
    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const SymplecticMatrix a = random_generator_element(3, rng).g();
        const SymplecticMatrix b = random_generator_element(3, rng).g();
        const SymplecticMatrix ab = compose(a, b);
        CHECK((ab.matrix() - a.matrix() * b.matrix()).norm() < 1e-12);
        CHECK((compose(ab, inverse(ab)).matrix() - RMat::Identity(6, 6)).norm() < 1e-10);
    }
}

TEST_CASE("oscillator flow is a rotation") {
    const auto H = QuadraticHamiltonian::harmonic_oscillator(1);
    const double t = 0.7;
    const SymplecticMatrix g = hamiltonian_flow(H, t);
    CHECK(g.A()(0, 0) == doctest::Approx(std::cos(t)));
    CHECK(g.B()(0, 0) == doctest::Approx(-std::sin(t)));
    CHECK(g.C()(0, 0) == doctest::Approx(std::sin(t)));
    CHECK(g.D()(0, 0) == doctest::Approx(std::cos(t)));
    CHECK((rotation(1, t).matrix() - g.matrix()).norm() < 1e-14);
}

TEST_CASE("free flow has C = t c") {
    const auto H = QuadraticHamiltonian::free_particle(2);
    const SymplecticMatrix g = hamiltonian_flow(H, 1.5);
    CHECK((g.C() - 1.5 * RMat::Identity(2, 2)).norm() < 1e-14);
    CHECK((g.A() - RMat::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("flows form a one-parameter group") {
    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        const auto H = random_hamiltonian(2, 0.8, rng, false);
        const auto lhs = compose(hamiltonian_flow(H, 0.4), hamiltonian_flow(H, -1.1));
        CHECK((lhs.matrix() - hamiltonian_flow(H, -0.7).matrix()).norm() < 1e-12);
        CHECK(is_symplectic(hamiltonian_flow(H, 2.0).matrix(), 1e-9).ok);
    }
}

TEST_CASE("Hamiltonian validation") {
    CHECK_THROWS_AS(QuadraticHamiltonian(mat({{1, 1}, {0, 1}}), RMat::Zero(2, 2), RMat::Identity(2, 2)), SymmetryError);
    CHECK_THROWS_AS(QuadraticHamiltonian(m1(1), RMat::Zero(2, 2), m1(1)), DimensionError);
}

TEST_CASE("Heisenberg transform is linear in the symplectic matrix") {
    const SymplecticMatrix g = rotation(1, pi / 2);
    const HeisenbergVector h{RVec::Constant(1, 1.0), RVec::Constant(1, 0.0)};
    const HeisenbergVector r = heisenberg_transform(g, h);
    CHECK(r.v(0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.w(0) == doctest::Approx(1.0));
}
