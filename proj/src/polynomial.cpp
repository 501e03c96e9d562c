#include "weilkit/polynomial.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "weilkit/errors.hpp"

namespace weil {

Polynomial Polynomial::constant(int n, cplx c) {
    Polynomial p(n);
    p.add_term(MultiIndex(n, 0), c);
    return p;
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, cplx c) {
    Polynomial p(static_cast<int>(alpha.size()));
    p.add_term(alpha, c);
    return p;
}

Polynomial Polynomial::variable(int n, int i) {
    MultiIndex a(n, 0);
    a[i] = 1;
    return monomial(a);
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [alpha, c] : terms_) {
        int s = 0;
        for (int e : alpha) s += e;
        d = std::max(d, s);
    }
    return d;
}

void Polynomial::add_term(const MultiIndex& alpha, cplx c) {
    if (static_cast<int>(alpha.size()) != n_) throw DimensionError("Polynomial: bad multi-index");
    if (c == cplx{0.0}) return;
    auto [it, inserted] = terms_.emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second == cplx{0.0}) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.n_ != n_) throw DimensionError("Polynomial: variable count mismatch");
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
}

Polynomial& Polynomial::operator*=(cplx c) {
    if (c == cplx{0.0}) {
        terms_.clear();
        return *this;
    }
    for (auto& [alpha, coef] : terms_) coef *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.n_ != b.n_) throw DimensionError("Polynomial: variable count mismatch");
    Polynomial out(a.n_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MultiIndex e(ea);
            for (int i = 0; i < a.n_; ++i) e[i] += eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial Polynomial::times_linear(const CVec& coeffs) const {
    Polynomial out(n_);
    for (const auto& [alpha, c] : terms_)
        for (int i = 0; i < n_; ++i) {
            if (coeffs(i) == cplx{0.0}) continue;
            MultiIndex e(alpha);
            ++e[i];
            out.add_term(e, c * coeffs(i));
        }
    return out;
}

Polynomial Polynomial::derivative(int i) const {
    Polynomial out(n_);
    for (const auto& [alpha, c] : terms_) {
        if (alpha[i] == 0) continue;
        MultiIndex e(alpha);
        --e[i];
        out.add_term(e, c * static_cast<double>(alpha[i]));
    }
    return out;
}

Polynomial Polynomial::conj() const {
    Polynomial out(n_);
    for (const auto& [alpha, c] : terms_) out.add_term(alpha, std::conj(c));
    return out;
}

cplx Polynomial::evaluate(const RVec& x) const {
    cplx sum = 0.0;
    for (const auto& [alpha, c] : terms_) {
        double m = 1.0;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < alpha[i]; ++k) m *= x(i);
        sum += c * m;
    }
    return sum;
}

cplx sqrt_det_positive_real_part(const CMat& W) {
    // Every eigenvalue of W has positive real part, and so does every
    // eigenvalue on the segment from 2E to W; the principal roots therefore
    // follow the continuous branch.
    Eigen::ComplexEigenSolver<CMat> es(W, false);
    if (es.info() != Eigen::Success) throw ContinuationError("sqrt_det: eigensolver failed");
    cplx root = 1.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const cplx lam = es.eigenvalues()(i);
        if (!(lam.real() > 0.0)) throw DomainError("sqrt_det: Re W is not positive definite");
        root *= std::sqrt(lam);
    }
    const cplx det = W.determinant();
    if (det != cplx{0.0} && std::isfinite(std::abs(det))) root *= std::sqrt(det / (root * root));
    return root;
}

GaussianMoments::GaussianMoments(const CMat& W) {
    const int n = static_cast<int>(W.rows());
    sigma_ = W.partialPivLu().inverse();
    zeroth_ = std::pow(2 * pi, n / 2.0) / sqrt_det_positive_real_part(W);
}

cplx GaussianMoments::operator()(const MultiIndex& alpha) {
    int total = 0;
    for (int e : alpha) total += e;
    if (total == 0) return zeroth_;
    if (total % 2 == 1) return 0.0;
    if (auto it = cache_.find(alpha); it != cache_.end()) return it->second;

    const int n = static_cast<int>(alpha.size());
    int i = 0;
    while (alpha[i] == 0) ++i;
    MultiIndex beta(alpha);
    --beta[i];
    cplx sum = 0.0;
    for (int j = 0; j < n; ++j) {
        if (beta[j] == 0) continue;
        MultiIndex gamma(beta);
        --gamma[j];
        sum += sigma_(i, j) * static_cast<double>(beta[j]) * (*this)(gamma);
    }
    cache_.emplace(alpha, sum);
    return sum;
}

cplx GaussianMoments::integrate(const Polynomial& p) {
    cplx sum = 0.0;
    for (const auto& [alpha, c] : p.terms()) sum += c * (*this)(alpha);
    return sum;
}

Polynomial normalized_hermite_polynomial(int n, int axis, int k) {
    if (k < 0) throw DomainError("hermite: negative degree");
    // Orthonormal recurrence: q_{k+1} = sqrt(2/(k+1)) x q_k - sqrt(k/(k+1)) q_{k-1},
    // q_0 = pi^{-1/4}.
    CVec lin = CVec::Zero(n);
    lin(axis) = 1.0;
    Polynomial prev(n);
    Polynomial cur = Polynomial::constant(n, std::pow(pi, -0.25));
    for (int j = 0; j < k; ++j) {
        Polynomial next = cur.times_linear(lin) * std::sqrt(2.0 / (j + 1)) +
                          prev * (-std::sqrt(static_cast<double>(j) / (j + 1)));
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace weil
