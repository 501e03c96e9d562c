#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>

#include <cmath>
#include <limits>

#include "weilkit/errors.hpp"
#include "weilkit/transform.hpp"

namespace weil {

namespace {

// Solves sum_k c_k s_i^{p_k} = I_i for the constant term.
double constant_term(const std::vector<double>& s, const std::vector<double>& vals,
                     const std::vector<double>& powers) {
    const int m = static_cast<int>(s.size());
    RMat A(m, m);
    RVec b(m);
    int const_col = -1;
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < m; ++k) A(i, k) = std::pow(s[i], powers[k]);
        b(i) = vals[i];
    }
    for (int k = 0; k < m; ++k)
        if (powers[k] == 0.0) const_col = k;
    return A.fullPivLu().solve(b)(const_col);
}

}  // namespace

SiegelNormResult siegel_norm_n1(const TransformSampler& u, const SiegelNormOptions& opt) {
    if (u.n() != 1) throw DimensionError("siegel_norm_n1: only n = 1 is supported");
    if (!(opt.y0 > 0.0)) throw DomainError("siegel_norm_n1: y0 must be positive");
    const double c0 = 2.0 * pi * std::norm(u.source_at_origin());

    boost::math::quadrature::sinh_sinh<double> inner_rule(12);
    boost::math::quadrature::exp_sinh<double> outer_rule(12);

    auto G = [&](double y) {
        auto integrand = [&](double x) {
            CMat Z(1, 1);
            Z(0, 0) = cplx(x, y);
            return std::norm(u.even(Z)) - c0 / std::sqrt(x * x + 1.0);
        };
        return inner_rule.integrate(integrand, opt.tol);
    };

    SiegelNormResult res{};
    for (int i = 0; i < 4; ++i) {
        const double y0 = opt.y0 / std::pow(2.0, i);
        const double I_y0 = outer_rule.integrate(
            [&](double t) {
                const double y = y0 + t;
                return std::pow(y, -1.5) * G(y);
            },
            opt.tol);
        res.y0.push_back(y0);
        res.partial.push_back(I_y0);
    }

    // I(y0) = a y0^{-1/2} + K + b y0^{1/2} + c y0^{3/2} + ...
    std::vector<double> s;
    for (double y : res.y0) s.push_back(std::sqrt(y));
    const std::vector<double> p3{-1.0, 0.0, 1.0};
    for (int i = 0; i + 3 <= 4; ++i)
        res.estimates.push_back(constant_term({s.begin() + i, s.begin() + i + 3},
                                              {res.partial.begin() + i, res.partial.begin() + i + 3}, p3));
    res.value = constant_term(s, res.partial, {-1.0, 0.0, 1.0, 3.0});

    const double spread = std::abs(res.estimates[0] - res.estimates[1]);
    if (!std::isfinite(res.value) || spread > 1e-3 * std::abs(res.value))
        throw TailError("siegel_norm_n1: y0 extrapolation did not converge");
    return res;
}

}  // namespace weil
