#pragma once

#include <map>
#include <vector>

#include "weilkit/types.hpp"

namespace weil {

using MultiIndex = std::vector<int>;

/// Sparse polynomial in n real variables with complex coefficients.
class Polynomial {
public:
    explicit Polynomial(int n = 1) : n_(n) {}
    static Polynomial constant(int n, cplx c);
    static Polynomial monomial(const MultiIndex& alpha, cplx c = 1.0);
    static Polynomial variable(int n, int i);

    int n() const noexcept { return n_; }
    int degree() const;
    bool is_zero() const noexcept { return terms_.empty(); }
    const std::map<MultiIndex, cplx>& terms() const noexcept { return terms_; }

    void add_term(const MultiIndex& alpha, cplx c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator*=(cplx c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator*(Polynomial a, cplx c) { return a *= c; }
    friend Polynomial operator*(cplx c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    /// sum_i coeffs_i x_i * P.
    Polynomial times_linear(const CVec& coeffs) const;
    Polynomial derivative(int i) const;
    Polynomial conj() const;

    cplx evaluate(const RVec& x) const;

private:
    int n_;
    std::map<MultiIndex, cplx> terms_;
};

/// sqrt(det W) for complex symmetric W with Re W positive definite, on the
/// branch continued from W = 2E (where the root is 2^{n/2}), evaluated as the
/// product of principal roots of the eigenvalues.
cplx sqrt_det_positive_real_part(const CMat& W);

/// Moments int x^alpha exp(-1/2 x^T W x) dx for complex symmetric W with
/// Re W positive definite, by integration-by-parts recursion.
class GaussianMoments {
public:
    explicit GaussianMoments(const CMat& W);
    cplx operator()(const MultiIndex& alpha);
    /// int P(x) exp(-1/2 x^T W x) dx.
    cplx integrate(const Polynomial& p);

private:
    CMat sigma_;
    cplx zeroth_;
    std::map<MultiIndex, cplx> cache_;
};

/// Physicists' Hermite polynomial H_k scaled to give the L2-normalized
/// Hermite function h_k(x) = poly(x) exp(-x^2/2), in variable `axis` of n.
Polynomial normalized_hermite_polynomial(int n, int axis, int k);

}  // namespace weil
