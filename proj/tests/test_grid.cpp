#include "helpers.hpp"

#include <cmath>

#include "weilkit/errors.hpp"
#include "weilkit/grid.hpp"
#include "weilkit/random.hpp"

using namespace weil;
using testing::check_close;
using testing::mat;

namespace {

cplx gauss(const RVec& x) { return std::exp(-0.5 * x.squaredNorm()); }

}  // namespace

TEST_CASE("grid spec") {
    CHECK_THROWS_AS(GridSpec::make(4, 1.0, 8), DimensionError);
    CHECK_THROWS_AS(GridSpec::make(1, 0.0, 8), DomainError);
    CHECK_THROWS_AS(GridSpec::make(1, 1.0, 7), DomainError);
    const GridSpec s = GridSpec::make(2, 4.0, 8);
    CHECK(s.size() == 64);
    CHECK(s.dx() == doctest::Approx(1.0));
    CHECK(s.coord(0) == doctest::Approx(-3.5));
    CHECK(s.coord(7) == doctest::Approx(3.5));
    CHECK(s.flat_index(s.multi_index(19)) == 19);
    CHECK(s.point(1)(1) == doctest::Approx(-2.5));
    CHECK(s.dual().R == doctest::Approx(pi * 8 / 8.0));
    CHECK(default_grid(2) == GridSpec::make(2, 8.0, 256));
}

TEST_CASE("Hermite states are orthonormal") {
    const GridSpec s = GridSpec::make(1, 10.0, 256);
    for (int j = 0; j <= 6; ++j) {
        const auto hj = hermite_state({j}, s);
        for (int k = 0; k <= 6; ++k) {
            const cplx ip = inner(hj, hermite_state({k}, s));
            check_close(ip, j == k ? 1.0 : 0.0, 1e-12);
        }
        CHECK(parity_residual(hj, j % 2 ? -1 : 1) < 1e-12);
    }
    CHECK_THROWS_AS(hermite_state({13}, s), DomainError);
    CHECK_THROWS_AS(hermite_state({1, 1}, s), DimensionError);
}

TEST_CASE("continuum Fourier transform") {
    const GridSpec s = GridSpec::make(2, 8.0, 64);
    const auto f = sample(s, gauss);
    const auto F = fourier(f, 1);
    CHECK(relative_error(F, sample(F.spec, gauss)) < 1e-12);
    CHECK(norm(F) == doctest::Approx(norm(f)));
    CHECK(relative_error(fourier(F, -1), f) < 1e-12);

    // x e^{-x^2/2} -> -i xi e^{-xi^2/2}
    const GridSpec s1 = GridSpec::make(1, 10.0, 128);
    const auto g = sample(s1, [](const RVec& x) { return x(0) * gauss(x); });
    const auto G = fourier(g, 1);
    const auto expected = sample(G.spec, [](const RVec& x) { return -I * x(0) * gauss(x); });
    CHECK(relative_error(G, expected) < 1e-12);
}

TEST_CASE("spectral derivative and interpolation") {
    const GridSpec s = GridSpec::make(2, 9.0, 64);
    const auto f = sample(s, [](const RVec& x) { return std::exp(I * 0.5 * x(0)) * gauss(x); });
    const auto d = spectral_derivative(f, 0);
    const auto expected = sample(s, [](const RVec& x) {
        return (I * 0.5 - x(0)) * std::exp(I * 0.5 * x(0)) * gauss(x);
    });
    CHECK(relative_error(d, expected) < 1e-10);
    RVec p(2);
    p << 0.123, -0.77;
    check_close(interpolate(f, p), std::exp(I * 0.5 * p(0)) * gauss(p), 1e-10);
}

TEST_CASE("elementary decompositions reproduce the matrix") {
    Rng rng(8);
    for (int k = 0; k < 50; ++k) {
        const int n = 1 + k % 3;
        RMat Q = random_matrix(n, 1.0, rng);
        if (std::abs(Q.determinant()) < 0.1) continue;
        const auto maps = decompose_linear(Q);
        RMat prod = RMat::Identity(n, n);
        for (const auto& e : maps) prod = prod * e.matrix(n);
        CHECK((prod - Q).norm() < 1e-10 * Q.norm());
    }
    CHECK_THROWS_AS(decompose_linear(mat({{1, 2}, {2, 4}})), SingularMatrixError);
}

TEST_CASE("resample matches direct evaluation") {
    const GridSpec s = GridSpec::make(2, 8.0, 128);
    const auto f = sample(s, [](const RVec& x) { return (1.0 + x(0)) * gauss(x); });
    Rng rng(2);
    for (int k = 0; k < 5; ++k) {
        RMat Q = RMat::Identity(2, 2) + random_matrix(2, 0.3, rng);
        const auto g = resample(f, Q);
        const auto expected = sample(s, [&](const RVec& x) {
            const RVec y = Q * x;
            return (1.0 + y(0)) * gauss(y);
        });
        CHECK(relative_error(g, expected) < 1e-9);
    }
    // A rotation by pi/2 needs stages that leave the box without padding.
    const RMat rot = mat({{0.0, -1.0}, {1.0, 0.0}});
    const auto g = resample(f, rot);
    const auto expected = sample(s, [&](const RVec& x) {
        const RVec y = rot * x;
        return (1.0 + y(0)) * gauss(y);
    });
    CHECK(relative_error(g, expected) < 1e-9);
}

TEST_CASE("chirp sum matches the direct sum") {
    const GridSpec s = GridSpec::make(2, 6.0, 32);
    Rng rng(1);
    std::vector<cplx> v(s.size());
    for (auto& z : v) z = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
    const GridFunction f(s, v);
    for (double alpha : {0.3, -1.7}) {
        for (int axis = 0; axis < 2; ++axis) {
            const auto out = chirp_sum(f, axis, alpha);
            double err = 0.0;
            for (std::size_t q = 0; q < s.size(); ++q) {
                auto idx = s.multi_index(q);
                const double xk = s.coord(idx[axis]);
                cplx acc = 0.0;
                for (int j = 0; j < s.N; ++j) {
                    idx[axis] = j;
                    acc += f.values[s.flat_index(idx)] * std::exp(-I * alpha * s.coord(j) * xk);
                }
                err = std::max(err, std::abs(out.values[q] - s.dx() * acc));
            }
            CHECK(err < 1e-11);
        }
    }
}

TEST_CASE("padding and cropping") {
    const GridSpec s = GridSpec::make(1, 5.0, 16);
    const auto f = sample(s, gauss);
    const auto p = pad_double(f);
    CHECK(p.spec == GridSpec::make(1, 10.0, 32));
    CHECK(norm(p) == doctest::Approx(norm(f)));
    CHECK(relative_error(crop_to(p, s), f) == doctest::Approx(0.0));
    CHECK_THROWS_AS(crop_to(f, GridSpec::make(1, 5.0, 8)), DimensionError);
    CHECK(boundary_decay(sample(GridSpec::make(1, 12.0, 128), gauss)) < 1e-25);
}
