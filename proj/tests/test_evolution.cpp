#include "helpers.hpp"

#include <cmath>

#include "weilkit/errors.hpp"
#include "weilkit/evolution.hpp"
#include "weilkit/random.hpp"

using namespace weil;
using testing::m1;
using testing::mat;

namespace {

GaussianState gauss(cplx lambda, CMat Z) { return GaussianState::make(lambda, SiegelPoint::make(Z)); }

double gaussian_error(const MetaplecticElement& m, const GaussianState& s, const GridSpec& spec) {
    const auto out = evolution_apply_general(m, sample_gaussian(s, spec));
    return relative_error(out, sample_gaussian(mp_act(m, s), spec));
}

}  // namespace

TEST_CASE("direct kernel needs invertible C") {
    const GridSpec s = GridSpec::make(1, 12.0, 256);
    const auto f = hermite_state({0}, s);
    CHECK_THROWS_AS(evolution_apply(mp_shear(m1(1.0)), f), SingularCError);
    CHECK_NOTHROW(evolution_apply(mp_fourier(1), f));
}

TEST_CASE("generators act on sampled Gaussians as on parameters") {
    const GridSpec s = GridSpec::make(1, 12.0, 512);
    const auto st = gauss(cplx(0.7, 0.2), CMat::Constant(1, 1, cplx(0.3, 1.2)));
    CHECK(gaussian_error(mp_identity(1), st, s) < 1e-14);
    CHECK(gaussian_error(mp_shear(m1(0.8)), st, s) < 1e-12);
    CHECK(gaussian_error(mp_gl(m1(-1.5)), st, s) < 1e-10);
    CHECK(gaussian_error(mp_fourier(1), st, s) < 1e-10);
    CHECK(gaussian_error(mp_rotation(1, 2.2), st, s) < 1e-10);
    CHECK(gaussian_error(mp_flow(QuadraticHamiltonian::free_particle(1), 1.0), st, s) < 1e-10);
    CHECK(gaussian_error(mp_center(1), st, s) < 1e-14);
}

TEST_CASE("two-dimensional elements") {
    const GridSpec s = GridSpec::make(2, 8.0, 128);
    CMat Z(2, 2);
    Z << cplx(0.2, 1.0), cplx(0.1, 0.2), cplx(0.1, 0.2), cplx(-0.3, 1.4);
    const auto st = gauss(1.0, Z);
    CHECK(gaussian_error(mp_gl(mat({{1.0, 0.5}, {-0.3, 1.2}})), st, s) < 1e-9);
    CHECK(gaussian_error(mp_fourier(2), st, s) < 1e-9);
    Rng rng(12);
    for (int k = 0; k < 3; ++k) CHECK(gaussian_error(random_flow_element(2, rng, 0.4), st, s) < 1e-8);
}

TEST_CASE("Heisenberg operators") {
    const GridSpec s = GridSpec::make(1, 12.0, 256);
    const cplx z(0.4, 1.1);
    const auto f = sample_gaussian(gauss(1.0, CMat::Constant(1, 1, z)), s);
    const auto a = apply_heisenberg(f, CVec::Constant(1, z), CVec::Constant(1, 1.0));
    CHECK(norm(a) < 1e-10 * norm(f));
    const HeisenbergVector h{RVec::Constant(1, 1.0), RVec::Constant(1, 0.0)};
    const auto x = apply_heisenberg(f, h);
    const auto expected = multiply(f, [](const RVec& p) { return cplx(p(0)); });
    CHECK(relative_error(x, expected) < 1e-14);
}

TEST_CASE("conjugation by the evolution moves Heisenberg operators") {
    const GridSpec s = GridSpec::make(1, 12.0, 512);
    const auto f = hermite_state({2}, s);
    Rng rng(30);
    for (int k = 0; k < 5; ++k) {
        const auto m = random_flow_element(1, rng, 0.4);
        const auto h = random_heisenberg(1, rng);
        CHECK(conjugation_residual(m, h, f) < 1e-9);
    }
}

TEST_CASE("Hermite functions are rotation eigenstates") {
    const GridSpec s = GridSpec::make(1, 12.0, 512);
    for (int k = 0; k <= 4; ++k) {
        const auto h = hermite_state({k}, s);
        const auto out = evolution_apply_general(mp_rotation(1, 0.9), h);
        CHECK(relative_error(out, std::exp(-I * 0.9 * (k + 0.5)) * h) < 1e-10);
    }
}
