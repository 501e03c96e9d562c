#include "helpers.hpp"

#include <cmath>
#include <vector>

#include "weilkit/branch.hpp"
#include "weilkit/errors.hpp"
#include "weilkit/random.hpp"
#include "weilkit/siegel.hpp"

using namespace weil;
using testing::check_close;
using testing::m1;
using testing::mat;

namespace {

CMat cm1(cplx z) { return CMat::Constant(1, 1, z); }

}  // namespace

TEST_CASE("Siegel point validation") {
    CHECK_NOTHROW(SiegelPoint::make(cm1({0.3, 1.0})));
    CHECK_THROWS_AS(SiegelPoint::make(cm1({0.3, -1.0})), DomainError);
    CHECK_THROWS_AS(SiegelPoint::make(cm1({0.3, 0.0})), DomainError);
    CMat Z = CMat::Identity(2, 2) * I;
    Z(0, 1) = 1.0;
    CHECK_THROWS_AS(SiegelPoint::make(Z), SymmetryError);
    CHECK(SiegelPoint::base_point(3).min_imag_eigenvalue() == doctest::Approx(1.0));
}

TEST_CASE("generator actions on the half-plane") {
    const SiegelPoint z = SiegelPoint::make(cm1({0.4, 1.5}));
    check_close(siegel_action(generator_shear(m1(2.0)), z).Z()(0, 0), cplx(2.4, 1.5), 1e-15);
    check_close(siegel_action(generator_fourier(1), z).Z()(0, 0), -1.0 / cplx(0.4, 1.5), 1e-15);
    check_close(siegel_action(generator_gl(m1(3.0)), z).Z()(0, 0), 9.0 * cplx(0.4, 1.5), 1e-14);
    const SiegelPoint base = SiegelPoint::base_point(2);
    CHECK((siegel_action(rotation(2, 0.9), base).Z() - base.Z()).norm() < 1e-14);
}

TEST_CASE("Siegel action is a group action") {
    Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 3;
        const auto g1 = random_generator_element(n, rng).g();
        const auto g2 = random_generator_element(n, rng).g();
        const SiegelPoint z = random_siegel(n, rng);
        const CMat lhs = siegel_action(g1, siegel_action(g2, z)).Z();
        const CMat rhs = siegel_action(compose(g1, g2), z).Z();
        CHECK((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("continue_sqrt follows the winding") {
    const auto loop = [](double s) { return std::exp(2.0 * pi * I * s); };
    check_close(continue_sqrt(loop, 1.0), -1.0, 1e-12);
    const auto twice = [](double s) { return std::exp(4.0 * pi * I * s); };
    check_close(continue_sqrt(twice, 1.0), 1.0, 1e-12);
    CHECK_THROWS_AS(continue_sqrt([](double s) { return cplx(s - 0.5, 0.0); }, 1.0),
                    ContinuationError);
}

TEST_CASE("branch agrees with continue_sqrt along the segment") {
    Rng rng(9);
    for (int k = 0; k < 30; ++k) {
        const int n = 1 + k % 3;
        const MetaplecticElement m = random_flow_element(n, rng);
        const SiegelPoint z = random_siegel(n, rng);
        const CMat Z0 = CMat::Identity(n, n) * I;
        const auto f = [&](double s) { return cocycle_det(m.g(), Z0 + s * (z.Z() - Z0)); };
        const cplx expected = continue_sqrt(f, m.eps0());
        check_close(branch_continue(m, z), expected, 1e-10 * std::abs(expected));
        const cplx e = branch_continue(m, z);
        check_close(e * e, cocycle_det(m.g(), z.Z()), 1e-10 * std::abs(e * e));
    }
}

TEST_CASE("lifted generators have the documented eps0") {
    check_close(mp_shear(m1(1.0)).eps0(), 1.0, 0.0);
    check_close(mp_fourier(1).eps0(), std::exp(-I * pi / 4.0), 1e-15);
    check_close(mp_fourier(3).eps0(), std::exp(-3.0 * I * pi / 4.0), 1e-15);
    check_close(mp_rotation(2, 0.8).eps0(), std::exp(I * 0.8), 1e-15);
    check_close(mp_gl(m1(-4.0)).eps0(), cplx(0.0, 0.5), 1e-15);
    check_close(mp_gl(m1(4.0)).eps0(), 0.5, 1e-15);
    CHECK_THROWS_AS(MetaplecticElement::make(generator_fourier(1), 1.0), DomainError);
    check_close(MetaplecticElement::lift(generator_fourier(1), -1.0).eps0(),
                -std::exp(-I * pi / 4.0), 1e-15);
}

TEST_CASE("metaplectic products") {
    // F^4 is a full turn: the center in odd dimension, the identity in even.
    for (int n = 1; n <= 3; ++n) {
        MetaplecticElement p = mp_identity(n);
        for (int k = 0; k < 4; ++k) p = mp_mul(p, mp_fourier(n));
        CHECK((p.g().matrix() - RMat::Identity(2 * n, 2 * n)).norm() < 1e-13);
        check_close(p.eps0(), n % 2 ? -1.0 : 1.0, 1e-13);
    }
    const MetaplecticElement r = mp_mul(mp_rotation(1, 0.4), mp_rotation(1, 1.3));
    check_close(r.eps0(), mp_rotation(1, 1.7).eps0(), 1e-13);
    const MetaplecticElement c = mp_mul(mp_center(2), mp_center(2));
    check_close(c.eps0(), 1.0, 0.0);

    Rng rng(21);
    for (int k = 0; k < 30; ++k) {
        const int n = 1 + k % 3;
        const auto a = random_generator_element(n, rng);
        const auto b = random_flow_element(n, rng);
        const auto d = random_generator_element(n, rng);
        const auto l = mp_mul(mp_mul(a, b), d);
        const auto rr = mp_mul(a, mp_mul(b, d));
        CHECK((l.g().matrix() - rr.g().matrix()).norm() < 1e-10);
        check_close(l.eps0(), rr.eps0(), 1e-10 * std::abs(l.eps0()));
        const auto id = mp_mul(a, mp_inv(a));
        check_close(id.eps0(), 1.0, 1e-10);
    }
}

TEST_CASE("flow lift is continuous in time") {
    const auto H = QuadraticHamiltonian::harmonic_oscillator(1);
    for (double t : {0.5, 2.0, 3.5, 7.0}) {
        check_close(mp_flow(H, t).eps0(), std::exp(I * t / 2.0), 1e-10);
    }
}

TEST_CASE("Maslov boundary phase") {
    const auto caustic = BoundaryChartPoint::make(m1(0.0));
    CHECK_THROWS_AS(maslov_boundary_phase(mp_fourier(1), caustic), BoundaryCausticError);

    const MaslovPhase id = maslov_boundary_phase(mp_identity(1), BoundaryChartPoint::make(m1(0.7)));
    CHECK(id.k == 0);
    CHECK(id.modulus == doctest::Approx(1.0));

    const MaslovPhase f = maslov_boundary_phase(mp_fourier(1), BoundaryChartPoint::make(m1(0.5)));
    CHECK(f.k == 1);
    CHECK(f.modulus == doctest::Approx(std::sqrt(2.0)));
    CHECK(f.snap_residual < 1e-6);

    const MaslovPhase c = maslov_boundary_phase(mp_center(1), BoundaryChartPoint::make(m1(0.5)));
    CHECK(c.k == 2);
}
