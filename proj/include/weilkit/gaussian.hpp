#pragma once

#include <variant>
#include <vector>

#include "weilkit/polynomial.hpp"
#include "weilkit/siegel.hpp"

namespace weil {

/// x -> lambda exp((i/2) x^T Z x) with lambda != 0 and Im Z positive definite.
class GaussianState {
public:
    /// Throws DomainError for lambda == 0; use ZeroState instead.
    static GaussianState make(cplx lambda, SiegelPoint Z);

    cplx lambda() const noexcept { return lambda_; }
    const SiegelPoint& point() const noexcept { return z_; }
    const CMat& Z() const noexcept { return z_.Z(); }
    int n() const noexcept { return z_.n(); }

private:
    GaussianState(cplx lambda, SiegelPoint z) : lambda_(lambda), z_(std::move(z)) {}
    cplx lambda_;
    SiegelPoint z_;
};

/// The zero function, kept outside GaussianState so lambda != 0 holds there.
struct ZeroState {
    int n = 1;
};

using GaussianValue = std::variant<GaussianState, ZeroState>;

GaussianValue scaled(const GaussianState& s, cplx c);

cplx evaluate(const GaussianState& s, const RVec& x);

/// lambda' = lambda / eps(Z), Z' = g Z.
GaussianState mp_act(const MetaplecticElement& m, const GaussianState& s);

/// int exp(-1/2 x^T W x) dx = (2 pi)^{n/2} det(W)^{-1/2} for Re W > 0, with
/// the branch continued from W = 2E.
cplx gaussian_integral(const CMat& W);

/// int conj(s1) s2 dx in closed form.
cplx inner_product(const GaussianState& s1, const GaussianState& s2);

/// max over samples of |sum_j (v_j x_j + w_j i d_j) s|, evaluated analytically.
double annihilation_residual(const GaussianState& s, const CVec& v, const CVec& w,
                             const std::vector<RVec>& samples);

/// One term poly(x) exp((i/2) x^T Z x) of a Gaussian expansion.
struct PolyGaussian {
    Polynomial poly;
    CMat Z;
};

/// Finite sum of polynomials times Gaussians with Im Z positive definite.
/// Closed under the metaplectic action, with closed-form transforms.
class GaussianExpansion {
public:
    explicit GaussianExpansion(int n) : n_(n) {}
    static GaussianExpansion from_state(const GaussianState& s);
    /// Product of normalized Hermite functions h_{alpha_1}(x_1)...h_{alpha_n}(x_n).
    static GaussianExpansion hermite(const MultiIndex& alpha);

    int n() const noexcept { return n_; }
    const std::vector<PolyGaussian>& terms() const noexcept { return terms_; }
    void add(Polynomial poly, const SiegelPoint& Z);

    GaussianExpansion& operator+=(const GaussianExpansion& o);
    GaussianExpansion& operator*=(cplx c);
    friend GaussianExpansion operator+(GaussianExpansion a, const GaussianExpansion& b) {
        return a += b;
    }
    friend GaussianExpansion operator*(cplx c, GaussianExpansion a) { return a *= c; }

    cplx evaluate(const RVec& x) const;

    /// int conj(psi(x)) weight(x) exp((i/2) x^T Z x) dx. Z may be real
    /// (boundary chart) as long as Im Z + Im Z_k is positive definite for
    /// every term.
    cplx pairing(const Polynomial& weight, const CMat& Z) const;
    double norm_squared() const;
    int max_degree() const;

private:
    int n_;
    std::vector<PolyGaussian> terms_;
};

GaussianExpansion mp_act(const MetaplecticElement& m, const GaussianExpansion& psi);

}  // namespace weil
