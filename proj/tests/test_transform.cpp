#include "helpers.hpp"

#include <cmath>

#include "weilkit/errors.hpp"
#include "weilkit/random.hpp"
#include "weilkit/transform.hpp"

using namespace weil;
using testing::check_close;
using testing::m1;

namespace {

CMat cm1(cplx z) { return CMat::Constant(1, 1, z); }

GaussianExpansion base_gaussian() {
    return GaussianExpansion::from_state(GaussianState::make(1.0, SiegelPoint::base_point(1)));
}

// x exp(-x^2/2)
GaussianExpansion odd_source() {
    GaussianExpansion e(1);
    e.add(Polynomial::variable(1, 0), SiegelPoint::base_point(1));
    return e;
}

}  // namespace

TEST_CASE("closed-form values") {
    const TransformSampler u(base_gaussian());
    CHECK(u.parity() == Parity::Even);
    check_close(transform_point(u, SiegelPoint::make(cm1(I))).value, std::sqrt(pi), 1e-13);
    check_close(transform_point(u, SiegelPoint::make(cm1(2.0 * I))).value, std::sqrt(2.0 * pi / 3.0),
                1e-13);
    check_close(boundary_transform(u, BoundaryChartPoint::make(m1(0.0))).value, std::sqrt(2.0 * pi),
                1e-13);
    check_close(boundary_transform(u, BoundaryChartPoint::make(m1(1.0))).value,
                std::sqrt(2.0 * pi) / std::sqrt(cplx(1.0, -1.0)), 1e-13);
    check_close(u.odd(cm1(I))(0), 0.0, 1e-15);
    check_close(u.source_at_origin(), 1.0, 1e-15);

    const TransformSampler v(odd_source());
    CHECK(v.parity() == Parity::Odd);
    check_close(transform_odd(v, SiegelPoint::make(cm1(I))).value(0), std::sqrt(pi) / 2.0, 1e-13);
    check_close(v.even(cm1(I)), 0.0, 1e-15);
}

TEST_CASE("grid sources agree with closed forms") {
    const GridSpec s = GridSpec::make(2, 8.0, 128);
    const auto e = GaussianExpansion::hermite({1, 2});
    const TransformSampler closed(e);
    const TransformSampler grid(sample_expansion(e, s));
    CHECK_FALSE(grid.truncation_warning());
    CHECK(grid.parity() == Parity::Odd);
    Rng rng(3);
    for (int k = 0; k < 5; ++k) {
        const SiegelPoint Z = random_siegel(2, rng);
        CHECK((closed.odd(Z.Z()) - grid.odd(Z.Z())).norm() < 1e-10);
    }
    const auto wide = sample(GridSpec::make(1, 3.0, 64), [](const RVec& x) { return std::exp(-0.1 * x(0) * x(0)); });
    CHECK(TransformSampler(wide).truncation_warning());
}

TEST_CASE("equivariance for generator elements") {
    Rng rng(17);
    const TransformSource even = GaussianExpansion::hermite({2});
    const TransformSource odd = GaussianExpansion::hermite({3});
    for (int k = 0; k < 10; ++k) {
        const auto m = random_generator_element(1, rng);
        const SiegelPoint Z = random_siegel(1, rng);
        CHECK(equivariance_check_even(m, even, Z) < 1e-10);
        CHECK(equivariance_check_odd(m, odd, Z) < 1e-10);
    }
}

TEST_CASE("boundary limit approaches the boundary value") {
    const TransformSampler u(GaussianExpansion::hermite({2}));
    const auto a = BoundaryChartPoint::make(m1(0.6));
    const cplx lim = boundary_limit(u, a);
    check_close(lim, boundary_transform(u, a).value, 1e-5);
}

TEST_CASE("the transform solves the second-order system") {
    const TransformSampler u(GaussianExpansion::hermite({2, 2}));
    CMat Z(2, 2);
    Z << cplx(0.1, 1.2), cplx(0.2, 0.1), cplx(0.2, 0.1), cplx(-0.2, 0.9);
    const SiegelPoint p = SiegelPoint::make(Z);
    const PdeResidual r = pde_residual_even(even_field(u), p, 0.05);
    CHECK(r.residual < 1e-5);
    CHECK(cauchy_riemann_residual(even_field(u), p, 1e-3) < 1e-6);
    CHECK_THROWS_AS(pde_residual_even(even_field(u), p, 0.0), StepError);
    CHECK_THROWS_AS(pde_residual_even(even_field(u), p, 1.0), StepError);

    // A non-holomorphic perturbation breaks the Cauchy-Riemann equations.
    const ScalarField bad = [&](const CMat& W) { return u.even(W) + std::conj(W(0, 0)); };
    CHECK(cauchy_riemann_residual(bad, p, 1e-3) > 0.5);
}

TEST_CASE("symmetric directions") {
    const CMat d = z_direction(2, 0, 1);
    check_close(d(0, 1), 0.5, 0.0);
    check_close(d(1, 0), 0.5, 0.0);
    check_close(z_direction(2, 1, 1)(1, 1), 1.0, 0.0);
}

TEST_CASE("growth along a boundary path is polynomial") {
    const TransformSampler u(GaussianExpansion::hermite({0}));
    std::vector<SiegelPoint> path;
    for (int k = 0; k < 10; ++k) path.push_back(SiegelPoint::make(cm1(I * std::pow(2.0, -k))));
    const auto fit = fit_growth(even_field(u), path);
    REQUIRE(fit.has_value());
    CHECK(fit->respected);
    CHECK(fit->M + fit->N <= 2);
}

TEST_CASE("regularized Siegel norm") {
    const TransformSampler u(GaussianExpansion::hermite({0}));
    const SiegelNormResult r = siegel_norm_n1(u);
    // A finite part, so the sign is not fixed.
    CHECK(std::isfinite(r.value));
    CHECK(r.value != 0.0);
    CHECK(r.y0.size() == 4);
    REQUIRE(r.estimates.size() >= 2);
    CHECK(std::abs(r.estimates.back() - r.estimates[r.estimates.size() - 2]) < 1e-3 * std::abs(r.value));
}
