#include "weilkit/propagator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <optional>

#include "weilkit/errors.hpp"
#include "weilkit/parallel.hpp"
#include "weilkit/polynomial.hpp"

namespace weil {

PropagatorKernel build_kernel(const QuadraticHamiltonian& H, double t) {
    const SymplecticMatrix g = hamiltonian_flow(H, t);
    const RMat C = g.C();
    if (std::abs(C.determinant()) <= 1e-8)
        throw SingularFocalPointError("build_kernel: det C(t) vanishes (focal point)", t);
    const int n = H.n();
    const RMat Ci = C.inverse();
    const RMat CD = symmetrize(RMat(Ci * g.D()), 1e-7);
    const RMat AC = symmetrize(RMat(g.A() * Ci), 1e-7);

    // Same normalization as the metaplectic evolution: kernel applied to
    // psi_{iE} gives 1/eps0 at x = 0.
    const MetaplecticElement m = mp_flow(H, t);
    const CMat W = CMat::Identity(n, n) - I * CD.cast<cplx>();
    const cplx amp = sqrt_det_positive_real_part(W) / (m.eps0() * std::pow(2.0 * pi, n / 2.0));
    return PropagatorKernel{t, g, amp, AC, Ci, CD};
}

cplx kernel_evaluate(const PropagatorKernel& K, const RVec& x, const RVec& y) {
    const double S = 0.5 * x.dot(K.AC * x) - y.dot(K.Cinv * x) + 0.5 * y.dot(K.CD * y);
    return K.amp * std::polar(1.0, S);
}

GridFunction propagate_grid(const PropagatorKernel& K, const GridFunction& f) {
    const GridSpec& sp = f.spec;
    if (sp.n != K.flow.n()) throw DimensionError("propagate_grid: dimension mismatch");
    const std::size_t S = f.size();
    const int n = sp.n;
    RMat pts(n, S);
    for (std::size_t k = 0; k < S; ++k) pts.col(k) = sp.point(k);
    std::vector<cplx> fy(S);
    for (std::size_t j = 0; j < S; ++j)
        fy[j] = f.values[j] * std::polar(sp.cell(), 0.5 * pts.col(j).dot(K.CD * pts.col(j)));
    const RMat Py = K.Cinv.transpose() * pts;  // column j: C^{-T} y_j

    GridFunction out(sp);
    parallel_for(0, S, [&](std::size_t k) {
        const RVec x = pts.col(k);
        cplx sum = 0.0;
        for (std::size_t j = 0; j < S; ++j) sum += fy[j] * std::polar(1.0, -Py.col(j).dot(x));
        out.values[k] = K.amp * std::polar(1.0, 0.5 * x.dot(K.AC * x)) * sum;
    });
    return out;
}

namespace {

// c-part over tau: multiply by exp(-i tau/2 xi^T c xi) in the Fourier domain.
GridFunction kinetic_step(const GridFunction& f, const RMat& c, double tau) {
    GridFunction F = fourier(f, 1);
    F = multiply(F, [&](const RVec& xi) { return std::polar(1.0, -0.5 * tau * xi.dot(c * xi)); });
    return fourier(F, -1);
}

// Drops |xi_a| > 2/3 of the Nyquist frequency; repeated dilations otherwise
// amplify round-off near Nyquist.
GridFunction dealias(const GridFunction& f) {
    const double cut = (2.0 / 3.0) * pi / f.spec.dx();
    GridFunction F = fourier(f, 1);
    F = multiply(F, [&](const RVec& xi) { return xi.cwiseAbs().maxCoeff() <= cut ? cplx(1.0) : cplx(0.0); });
    return fourier(F, -1);
}

// b-part over tau: psi -> e^{tau tr b / 2} psi(e^{tau b^T} x).
struct DilationStep {
    DilationStep(const GridSpec& spec, const RMat& b, double tau)
        : factor(std::exp(0.5 * tau * b.trace())), map(spec, RMat((tau * b.transpose()).exp()), false) {}
    GridFunction operator()(const GridFunction& f) const { return dealias(factor * map(f)); }
    double factor;
    Resampler map;
};

}  // namespace

GridFunction reference_integrator(const QuadraticHamiltonian& H, double t, const GridFunction& f,
                                  int steps) {
    if (steps < 1) throw DomainError("reference_integrator: steps must be >= 1");
    if (f.n() != H.n()) throw DimensionError("reference_integrator: dimension mismatch");
    const double tau = t / steps;
    const bool has_b = !H.b().isZero(0.0);
    const bool has_a = !H.a().isZero(0.0);
    const bool has_c = !H.c().isZero(0.0);
    const RMat& a = H.a();

    std::optional<DilationStep> half, full;
    if (has_b) {
        half.emplace(f.spec, H.b(), tau / 2);
        full.emplace(f.spec, H.b(), tau);
    }

    GridFunction psi = f;
    if (has_b) psi = (*half)(psi);
    for (int s = 0; s < steps; ++s) {
        if (has_c) psi = kinetic_step(psi, H.c(), tau / 2);
        if (has_a)
            psi = multiply(psi, [&](const RVec& x) { return std::polar(1.0, -0.5 * tau * x.dot(a * x)); });
        if (has_c) psi = kinetic_step(psi, H.c(), tau / 2);
        if (has_b) psi = s + 1 < steps ? (*full)(psi) : (*half)(psi);
    }
    const double n0 = norm(f);
    if (n0 > 0.0 && std::abs(norm(psi) - n0) > 1e-3 * n0)
        throw IntegratorError("reference_integrator: norm drift exceeds 1e-3");
    return psi;
}

}  // namespace weil
