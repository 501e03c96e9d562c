#include "weilkit/evolution.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "weilkit/errors.hpp"
#include "weilkit/parallel.hpp"
#include "weilkit/polynomial.hpp"

namespace weil {

namespace {

// out(xi) = sum_z exp(-i sum_a d_a z_a xi_a) f(z) dx^n, xi and z both on the grid.
GridFunction separable_exponential_sum(const GridFunction& f, const RVec& d) {
    GridFunction cur = f;
    for (int a = 0; a < f.spec.n; ++a) cur = chirp_sum(cur, a, d(a));
    return cur;
}

double spectral_norm(const RMat& M) {
    Eigen::JacobiSVD<RMat> svd(M);
    return svd.singularValues()(0);
}

// Size of the oscillatory kernel coefficients; infinity when C is singular.
double kernel_cost(const SymplecticMatrix& g) {
    const RMat C = g.C();
    if (std::abs(C.determinant()) <= 1e-8) return std::numeric_limits<double>::infinity();
    const RMat Ci = C.inverse();
    return std::max({spectral_norm(Ci), spectral_norm(Ci * g.D()), spectral_norm(g.A() * Ci)});
}

bool c_vanishes(const SymplecticMatrix& g) {
    return g.C().cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, g.matrix().cwiseAbs().maxCoeff());
}

GridFunction apply_block_triangular(const MetaplecticElement& m, const GridFunction& f) {
    // C = 0: U f(x) = eps0^{-1} exp((i/2) x^T B A^T x) f(A^T x).
    const RMat At = m.g().A().transpose();
    const RMat S = symmetrize(RMat(m.g().B() * At), 1e-7);
    GridFunction g = resample(f, At, false);
    const cplx inv_eps = 1.0 / m.eps0();
    return multiply(g, [&](const RVec& x) {
        return inv_eps * std::polar(1.0, 0.5 * x.dot(S * x));
    });
}

}  // namespace

GridFunction evolution_apply(const MetaplecticElement& m, const GridFunction& f) {
    const int n = m.n();
    if (f.n() != n) throw DimensionError("evolution_apply: dimension mismatch");
    const RMat A = m.g().A(), C = m.g().C(), D = m.g().D();
    if (std::abs(C.determinant()) <= 1e-8)
        throw SingularCError("evolution_apply: |det C| <= 1e-8; use evolution_apply_general");

    const RMat P = C.inverse();
    const RMat PD = symmetrize(RMat(P * D), 1e-7);
    const RMat AP = symmetrize(RMat(A * P), 1e-7);

    // Chirp in y.
    GridFunction phi = multiply(f, [&](const RVec& y) { return std::polar(1.0, 0.5 * y.dot(PD * y)); });

    // y^T P x with P = Pr L diag(d) U1 Pc: substitute z = L^T Pr^T y, xi = U1 Pc x.
    Eigen::FullPivLU<RMat> lu(P);
    const RMat LU = lu.matrixLU();
    RMat L = RMat::Identity(n, n);
    L.triangularView<Eigen::StrictlyLower>() = LU.triangularView<Eigen::StrictlyLower>();
    RMat U1 = RMat::Identity(n, n);
    U1.triangularView<Eigen::StrictlyUpper>() = LU.triangularView<Eigen::StrictlyUpper>();
    const RVec d = LU.diagonal();
    for (int i = 0; i < n; ++i) U1.row(i).tail(n - i - 1) /= d(i);
    const RMat Pr = lu.permutationP().inverse().toDenseMatrix().cast<double>();
    const RMat Pc = lu.permutationQ().inverse().toDenseMatrix().cast<double>();

    const RMat Q1 = Pr * L.transpose().inverse();
    if (!(Q1 - RMat::Identity(n, n)).isZero(0.0)) phi = resample(phi, Q1, false);
    GridFunction h = separable_exponential_sum(phi, d);
    const RMat Q2 = U1 * Pc;
    if (!(Q2 - RMat::Identity(n, n)).isZero(0.0)) h = resample(h, Q2, false);

    // U psi_{iE}(0) = 1/eps0 fixes kappa with the branch of det(E - i C^{-1} D)
    // continued from the positive definite case.
    const CMat W = CMat::Identity(n, n) - I * PD.cast<cplx>();
    const cplx kappa = sqrt_det_positive_real_part(W) / (m.eps0() * std::pow(2.0 * pi, n / 2.0));
    return multiply(h, [&](const RVec& x) { return kappa * std::polar(1.0, 0.5 * x.dot(AP * x)); });
}

namespace {

GridFunction apply_factored(const MetaplecticElement& m, const GridFunction& f) {
    if (c_vanishes(m.g())) return apply_block_triangular(m, f);

    const double direct = kernel_cost(m.g());
    if (direct <= 4.0) return evolution_apply(m, f);

    const std::array<double, 3> thetas{pi / 4, pi / 3, pi / 5};
    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    for (double th : thetas) {
        const SymplecticMatrix rest = compose(m.g(), inverse(rotation(m.n(), th)));
        const double cost = std::max(kernel_cost(rest), kernel_cost(rotation(m.n(), th)));
        if (cost < best) {
            best = cost;
            best_theta = th;
        }
    }
    if (best < direct) {
        const MetaplecticElement r = mp_rotation(m.n(), best_theta);
        const MetaplecticElement rest = mp_mul(m, mp_inv(r));
        return evolution_apply(rest, evolution_apply(r, f));
    }
    if (std::isfinite(direct)) return evolution_apply(m, f);
    throw FactorizationError("evolution_apply_general: no rotation splits the element");
}

}  // namespace

GridFunction evolution_apply_general(const MetaplecticElement& m, const GridFunction& f) {
    if (f.n() != m.n()) throw DimensionError("evolution_apply_general: dimension mismatch");
    // Intermediate stages may be wider than the input and output; give them room.
    return crop_to(apply_factored(m, pad_double(f)), f.spec);
}

GridFunction apply_heisenberg(const GridFunction& f, const CVec& v, const CVec& w) {
    const int n = f.n();
    if (v.size() != n || w.size() != n) throw DimensionError("apply_heisenberg: dimension mismatch");
    GridFunction out = multiply(f, [&](const RVec& x) { return x.cast<cplx>().dot(v); });
    for (int j = 0; j < n; ++j) {
        if (w(j) == cplx{0.0}) continue;
        const GridFunction dj = spectral_derivative(f, j);
        for (std::size_t k = 0; k < out.size(); ++k) out.values[k] += I * w(j) * dj.values[k];
    }
    return out;
}

GridFunction apply_heisenberg(const GridFunction& f, const HeisenbergVector& h) {
    return apply_heisenberg(f, h.v.cast<cplx>(), h.w.cast<cplx>());
}

double conjugation_residual(const MetaplecticElement& m, const HeisenbergVector& h,
                            const GridFunction& f) {
    const HeisenbergVector gh = heisenberg_transform(m.g(), h);
    const GridFunction lhs = evolution_apply_general(m, apply_heisenberg(f, h));
    const GridFunction rhs = apply_heisenberg(evolution_apply_general(m, f), gh);
    return norm(lhs - rhs) / norm(f);
}

}  // namespace weil
