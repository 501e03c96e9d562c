#include "weilkit/gaussian.hpp"

#include <cmath>

#include "weilkit/errors.hpp"

namespace weil {

GaussianState GaussianState::make(cplx lambda, SiegelPoint Z) {
    if (lambda == cplx{0.0})
        throw DomainError("GaussianState: zero amplitude (use ZeroState)");
    return GaussianState(lambda, std::move(Z));
}

GaussianValue scaled(const GaussianState& s, cplx c) {
    if (c == cplx{0.0}) return ZeroState{s.n()};
    return GaussianState::make(s.lambda() * c, s.point());
}

cplx evaluate(const GaussianState& s, const RVec& x) {
    const CVec xc = x.cast<cplx>();
    return s.lambda() * std::exp(0.5 * I * (xc.transpose() * s.Z() * xc)(0, 0));
}

GaussianState mp_act(const MetaplecticElement& m, const GaussianState& s) {
    const cplx eps = branch_continue(m, s.point());
    return GaussianState::make(s.lambda() / eps, siegel_action(m.g(), s.point()));
}

cplx gaussian_integral(const CMat& W) {
    const int n = static_cast<int>(W.rows());
    return std::pow(2 * pi, n / 2.0) / sqrt_det_positive_real_part(W);
}

cplx inner_product(const GaussianState& s1, const GaussianState& s2) {
    if (s1.n() != s2.n()) throw DimensionError("inner_product: dimension mismatch");
    const CMat W = -I * (s2.Z() - s1.Z().conjugate());
    return std::conj(s1.lambda()) * s2.lambda() * gaussian_integral(W);
}

double annihilation_residual(const GaussianState& s, const CVec& v, const CVec& w,
                             const std::vector<RVec>& samples) {
    // i d_j psi_Z = -(Z x)_j psi_Z, so the operator multiplies by (v - Z w).x.
    const CVec coeff = v - s.Z() * w;
    double worst = 0.0;
    for (const auto& x : samples) {
        const cplx val = x.cast<cplx>().dot(coeff) * evaluate(s, x);
        worst = std::max(worst, std::abs(val));
    }
    return worst;
}

GaussianExpansion GaussianExpansion::from_state(const GaussianState& s) {
    GaussianExpansion e(s.n());
    e.add(Polynomial::constant(s.n(), s.lambda()), s.point());
    return e;
}

GaussianExpansion GaussianExpansion::hermite(const MultiIndex& alpha) {
    const int n = static_cast<int>(alpha.size());
    Polynomial p = Polynomial::constant(n, 1.0);
    for (int i = 0; i < n; ++i) p = p * normalized_hermite_polynomial(n, i, alpha[i]);
    GaussianExpansion e(n);
    e.add(std::move(p), SiegelPoint::base_point(n));
    return e;
}

void GaussianExpansion::add(Polynomial poly, const SiegelPoint& Z) {
    if (poly.n() != n_ || Z.n() != n_) throw DimensionError("GaussianExpansion: dimension");
    if (poly.is_zero()) return;
    for (auto& t : terms_)
        if ((t.Z - Z.Z()).cwiseAbs().maxCoeff() == 0.0) {
            t.poly += poly;
            return;
        }
    terms_.push_back({std::move(poly), Z.Z()});
}

GaussianExpansion& GaussianExpansion::operator+=(const GaussianExpansion& o) {
    if (o.n_ != n_) throw DimensionError("GaussianExpansion: dimension");
    for (const auto& t : o.terms_) add(t.poly, SiegelPoint::make(t.Z));
    return *this;
}

GaussianExpansion& GaussianExpansion::operator*=(cplx c) {
    for (auto& t : terms_) t.poly *= c;
    return *this;
}

cplx GaussianExpansion::evaluate(const RVec& x) const {
    const CVec xc = x.cast<cplx>();
    cplx sum = 0.0;
    for (const auto& t : terms_)
        sum += t.poly.evaluate(x) * std::exp(0.5 * I * (xc.transpose() * t.Z * xc)(0, 0));
    return sum;
}

cplx GaussianExpansion::pairing(const Polynomial& weight, const CMat& Z) const {
    cplx sum = 0.0;
    for (const auto& t : terms_) {
        const CMat W = -I * (Z - t.Z.conjugate());
        GaussianMoments moments(W);
        sum += moments.integrate(t.poly.conj() * weight);
    }
    return sum;
}

double GaussianExpansion::norm_squared() const {
    cplx sum = 0.0;
    for (const auto& t : terms_) sum += pairing(t.poly, t.Z);
    return sum.real();
}

int GaussianExpansion::max_degree() const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.poly.degree());
    return d;
}

GaussianExpansion mp_act(const MetaplecticElement& m, const GaussianExpansion& psi) {
    const int n = psi.n();
    if (m.n() != n) throw DimensionError("mp_act: dimension mismatch");
    const RMat A = m.g().A();
    const RMat C = m.g().C();
    GaussianExpansion out(n);
    for (const auto& t : psi.terms()) {
        const SiegelPoint Z = SiegelPoint::make(t.Z);
        const SiegelPoint Zp = siegel_action(m.g(), Z);
        const cplx inv_eps = 1.0 / branch_continue(m, Z);
        // U x_l U^{-1} = K_l with coefficients (A e_l; C e_l). On Q psi_{Z'}:
        // K_l (Q psi) = [((A - Z' C) e_l).x Q + i (C e_l).grad Q] psi.
        const CMat AmZC = A.cast<cplx>() - Zp.Z() * C.cast<cplx>();
        auto apply_K = [&](const Polynomial& q, int l) {
            Polynomial r = q.times_linear(AmZC.col(l));
            for (int j = 0; j < n; ++j)
                if (C(j, l) != 0.0) r += q.derivative(j) * (I * C(j, l));
            return r;
        };
        Polynomial image(n);
        for (const auto& [alpha, c] : t.poly.terms()) {
            Polynomial q = Polynomial::constant(n, c * inv_eps);
            for (int l = 0; l < n; ++l)
                for (int k = 0; k < alpha[l]; ++k) q = apply_K(q, l);
            image += q;
        }
        out.add(std::move(image), Zp);
    }
    return out;
}

}  // namespace weil
