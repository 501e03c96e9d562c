#include "helpers.hpp"

#include <cmath>

#include "weilkit/errors.hpp"
#include "weilkit/gaussian.hpp"
#include "weilkit/grid.hpp"
#include "weilkit/random.hpp"

using namespace weil;
using testing::check_close;
using testing::m1;

namespace {

GaussianState gauss1(cplx lambda, cplx z) {
    return GaussianState::make(lambda, SiegelPoint::make(CMat::Constant(1, 1, z)));
}

RVec r1(double x) { return RVec::Constant(1, x); }

}  // namespace

TEST_CASE("closed-form integrals") {
    check_close(gaussian_integral(CMat::Identity(1, 1)), std::sqrt(2.0 * pi), 1e-14);
    check_close(gaussian_integral(2.0 * CMat::Identity(2, 2)), pi, 1e-14);
    // Re W > 0 with a rotating phase: int exp(-(1 - i)x^2/2) = sqrt(2 pi / (1 - i)).
    check_close(gaussian_integral(CMat::Constant(1, 1, cplx(1.0, -1.0))),
                std::sqrt(2.0 * pi / cplx(1.0, -1.0)), 1e-14);

    const auto a = gauss1(1.0, I);
    const auto b = gauss1(1.0, 2.0 * I);
    check_close(inner_product(a, a), std::sqrt(pi), 1e-14);
    check_close(inner_product(a, b), std::sqrt(2.0 * pi / 3.0), 1e-14);
}

TEST_CASE("state construction") {
    CHECK_THROWS_AS(gauss1(0.0, I), DomainError);
    CHECK(std::holds_alternative<ZeroState>(scaled(gauss1(1.0, I), 0.0)));
    const auto s = std::get<GaussianState>(scaled(gauss1(2.0, I), I));
    check_close(s.lambda(), 2.0 * I, 0.0);
    check_close(evaluate(gauss1(1.0, I), r1(1.0)), std::exp(-0.5), 1e-15);
}

TEST_CASE("generator actions on Gaussians") {
    const auto s = gauss1(1.5, cplx(0.2, 0.8));
    const auto sh = mp_act(mp_shear(m1(0.7)), s);
    check_close(sh.Z()(0, 0), cplx(0.9, 0.8), 1e-15);
    check_close(sh.lambda(), 1.5, 1e-15);

    const auto f = mp_act(mp_fourier(1), gauss1(1.0, I));
    check_close(f.Z()(0, 0), I, 1e-15);
    check_close(f.lambda(), std::exp(I * pi / 4.0), 1e-15);

    const auto g = mp_act(mp_gl(m1(2.0)), gauss1(1.0, I));
    check_close(g.Z()(0, 0), 4.0 * I, 1e-14);
    check_close(g.lambda(), std::sqrt(2.0), 1e-14);
}

TEST_CASE("Fourier lift matches the discrete transform") {
    // Self-dual grid: R^2 = pi N / 2.
    const int N = 256;
    const GridSpec spec = GridSpec::make(1, std::sqrt(pi * N / 2.0), N);
    REQUIRE(spec.dual().R == doctest::Approx(spec.R));
    const auto s = gauss1(1.0, cplx(0.3, 0.6));
    const GridFunction ft = fourier(sample_gaussian(s, spec), -1);
    const GridFunction expected = sample_gaussian(mp_act(mp_fourier(1), s), ft.spec);
    CHECK(relative_error(std::exp(I * pi / 4.0) * ft, expected) < 1e-12);
}

TEST_CASE("action on states respects unitarity and products") {
    Rng rng(4);
    for (int k = 0; k < 20; ++k) {
        const int n = 1 + k % 3;
        const auto s = GaussianState::make(cplx(0.5, 1.0), random_siegel(n, rng));
        const auto m1e = random_generator_element(n, rng);
        const auto m2e = random_flow_element(n, rng);
        const auto u = mp_act(m1e, s);
        check_close(inner_product(u, u), inner_product(s, s), 1e-10 * std::abs(inner_product(s, s)));
        const auto lhs = mp_act(m1e, mp_act(m2e, s));
        const auto rhs = mp_act(mp_mul(m1e, m2e), s);
        CHECK((lhs.Z() - rhs.Z()).norm() < 1e-10 * (1.0 + rhs.Z().norm()));
        check_close(lhs.lambda(), rhs.lambda(), 1e-10 * std::abs(rhs.lambda()));
    }
}

TEST_CASE("annihilation operators") {
    const auto s = gauss1(1.0, cplx(0.4, 1.1));
    CVec w = CVec::Constant(1, 1.0);
    CVec v = CVec::Constant(1, cplx(0.4, 1.1));
    const std::vector<RVec> pts{r1(-1.0), r1(0.3), r1(2.0)};
    CHECK(annihilation_residual(s, v, w, pts) < 1e-14);
    CHECK(annihilation_residual(s, CVec::Constant(1, 1.0), w, pts) > 0.1);
}

TEST_CASE("Gaussian expansions") {
    const auto h1 = GaussianExpansion::hermite({1});
    CHECK(h1.norm_squared() == doctest::Approx(1.0));
    const double x = 0.8;
    check_close(h1.evaluate(r1(x)), std::sqrt(2.0) * x * std::pow(pi, -0.25) * std::exp(-x * x / 2),
                1e-14);
    const auto h23 = GaussianExpansion::hermite({2, 3});
    CHECK(h23.norm_squared() == doctest::Approx(1.0));
    CHECK(h23.max_degree() == 5);

    // Hermite functions are eigenfunctions of the rotations.
    const auto r = mp_act(mp_rotation(1, 0.6), GaussianExpansion::hermite({3}));
    check_close(r.evaluate(r1(x)), std::exp(-I * 0.6 * 3.5) * GaussianExpansion::hermite({3}).evaluate(r1(x)),
                1e-12);

    const auto s = gauss1(1.0, cplx(0.1, 0.9));
    const auto m = mp_shear(m1(0.3));
    check_close(mp_act(m, GaussianExpansion::from_state(s)).evaluate(r1(x)),
                evaluate(mp_act(m, s), r1(x)), 1e-14);
}
