#include <algorithm>
#include <cmath>

#include "weilkit/errors.hpp"
#include "weilkit/random.hpp"
#include "weilkit/suites.hpp"
#include "weilkit/transform.hpp"

namespace weil {

using detail::grid_for;
using detail::lower;
using detail::upper;

namespace {

MultiIndex random_hermite_index(int n, int parity, int max_degree, Rng& rng) {
    for (;;) {
        MultiIndex a(n);
        int deg = 0;
        for (auto& k : a) deg += (k = std::uniform_int_distribution<int>(0, max_degree)(rng));
        if (deg % 2 == parity && deg <= max_degree) return a;
    }
}

std::vector<MultiIndex> hermite_indices(int n, int parity, int max_degree) {
    std::vector<MultiIndex> out;
    if (n == 1) {
        for (int k = parity; k <= max_degree; k += 2) out.push_back({k});
        return out;
    }
    for (int d = parity; d <= max_degree; d += 2)
        for (int k = 0; k <= d; ++k) out.push_back({k, d - k});
    return out;
}

GaussianExpansion random_source(int n, int parity, Rng& rng) {
    GaussianExpansion e = GaussianExpansion::hermite(random_hermite_index(n, parity, 4, rng));
    e *= cplx(uniform(rng, 0.5, 1.5), uniform(rng, -1, 1));
    if (parity == 0 && std::bernoulli_distribution(0.5)(rng)) {
        const GaussianState s = GaussianState::make(cplx(uniform(rng, -1, 1), uniform(rng, -1, 1)),
                                                    random_siegel(n, rng, 0.3, 0.7, 1.5));
        e += GaussianExpansion::from_state(s);
    }
    return e;
}

MetaplecticElement random_element(int n, Rng& rng) {
    MetaplecticElement m = random_flow_element(n, rng, 0.4);
    if (std::bernoulli_distribution(0.5)(rng)) m = mp_mul(random_generator_element(n, rng), m);
    return m;
}

bool grid_safe(const MetaplecticElement& m, const GridSpec& sp) {
    // Proxy: the image of the base Gaussian under m^{-1} stays resolved.
    const CMat Z = mp_act(mp_inv(m), GaussianState::make(1.0, SiegelPoint::base_point(sp.n))).Z();
    Eigen::SelfAdjointEigenSolver<RMat> es(RMat(Z.imag()));
    const double band = pi / sp.dx();
    return es.eigenvalues().minCoeff() >= std::max(0.4, 60.0 / (sp.R * sp.R)) &&
           es.eigenvalues().maxCoeff() <= std::min(3.0, band / 10.0) && Z.real().cwiseAbs().maxCoeff() <= 2.0;
}

}  // namespace

std::vector<CheckResult> suite_equivariance(const SuiteOptions& opt) {
    Rng rng(opt.seed);
    std::vector<CheckResult> out;
    const char* names[2] = {"even", "odd"};
    auto dim = [&](double p2) { return opt.n ? *opt.n : (std::bernoulli_distribution(p2)(rng) ? 2 : 1); };

    for (int parity = 0; parity < 2; ++parity) {
        auto check = [&](const MetaplecticElement& m, const TransformSource& psi, const SiegelPoint& Z) {
            return parity == 0 ? equivariance_check_even(m, psi, Z) : equivariance_check_odd(m, psi, Z);
        };
        double closed = 0.0;
        for (int s = 0; s < 100; ++s) {
            const int n = opt.n ? *opt.n : std::uniform_int_distribution<int>(1, 3)(rng);
            closed = std::max(closed, check(random_element(n, rng), random_source(n, parity, rng),
                                            random_siegel(n, rng)));
        }
        out.push_back(upper(opt, std::string("equivariance_closed_form_") + names[parity], closed, 1e-6,
                            {{"samples", 100}}));

        double grid = 0.0;
        bool warned = false;
        int done = 0;
        while (done < 100) {
            const int n = dim(0.2);
            const GridSpec sp = grid_for(opt, n);
            const MetaplecticElement m = random_element(n, rng);
            if (!grid_safe(m, sp)) continue;
            const GridFunction f = hermite_state(random_hermite_index(n, parity, 3, rng), sp);
            warned |= TransformSampler(f).truncation_warning();
            grid = std::max(grid, check(m, f, random_siegel(n, rng)));
            ++done;
        }
        out.push_back(upper(opt, std::string("equivariance_grid_") + names[parity], grid, 1e-5,
                            {{"samples", 100}, {"truncation_warning", warned}}));
    }

    double vanish = 0.0, limit = 0.0;
    for (int s = 0; s < 10; ++s) {
        const int n = opt.n ? *opt.n : std::uniform_int_distribution<int>(1, 2)(rng);
        const SiegelPoint Z = random_siegel(n, rng);
        const TransformSampler ue(random_source(n, 0, rng)), uo(random_source(n, 1, rng));
        const GridSpec sp = grid_for(opt, n);
        const TransformSampler ge(hermite_state(random_hermite_index(n, 0, 4, rng), sp));
        const TransformSampler go(hermite_state(random_hermite_index(n, 1, 4, rng), sp));
        vanish = std::max({vanish, std::abs(transform_point(uo, Z).value), transform_odd(ue, Z).value.norm(),
                           std::abs(transform_point(go, Z).value), transform_odd(ge, Z).value.norm()});
        const BoundaryChartPoint a = BoundaryChartPoint::make(random_symmetric(n, 0.5, rng));
        for (const TransformSampler* u : {&ue, &ge})
            limit = std::max(limit, std::abs(boundary_transform(*u, a).value - boundary_limit(*u, a)) /
                                        u->source_norm());
    }
    out.push_back(upper(opt, "parity_vanishing", vanish, 1e-10, {{"samples", 10}}));
    out.push_back(upper(opt, "boundary_limit_consistency", limit, 1e-5, {{"samples", 10}}));
    return out;
}

std::vector<CheckResult> suite_pde(const SuiteOptions& opt) {
    Rng rng(opt.seed);
    std::vector<CheckResult> out;
    const int n = opt.n.value_or(2);
    const double step = 0.05, bstep = 0.02;
    double even = 0.0, odd = 0.0, beven = 0.0, bodd = 0.0, cr = 0.0;
    double ratio_lo = 1e300, ratio_hi = 0.0;
    auto ratio = [&](const PdeResidual& r) {
        // Only meaningful while truncation error dominates rounding.
        if (r.raw_half > 1e3 * std::max(r.residual, 1e-12)) {
            ratio_lo = std::min(ratio_lo, r.ratio);
            ratio_hi = std::max(ratio_hi, r.ratio);
        }
    };
    for (int parity = 0; parity < 2; ++parity)
        for (const MultiIndex& alpha : hermite_indices(n, parity, 6)) {
            const TransformSampler u(GaussianExpansion::hermite(alpha));
            for (int s = 0; s < 10; ++s) {
                const SiegelPoint Z = random_siegel(n, rng, 0.5, 0.5, 2.0);
                const BoundaryChartPoint a = BoundaryChartPoint::make(random_symmetric(n, 0.5, rng));
                if (parity == 0) {
                    const auto r = pde_residual_even(even_field(u), Z, step);
                    const auto rb = pde_residual_boundary_even(even_field(u), a, bstep);
                    even = std::max(even, r.residual);
                    beven = std::max(beven, rb.residual);
                    ratio(r);
                    ratio(rb);
                    if (s < 2) cr = std::max(cr, cauchy_riemann_residual(even_field(u), Z, 1e-3));
                } else {
                    const auto r = pde_residual_odd(odd_field(u), Z, step);
                    const auto rb = pde_residual_boundary_odd(odd_field(u), a, bstep);
                    odd = std::max(odd, r.residual);
                    bodd = std::max(bodd, rb.residual);
                    ratio(r);
                    ratio(rb);
                }
            }
        }
    const nlohmann::json p = {{"n", n}, {"max_degree", 6}, {"points", 10}, {"step", step}};
    out.push_back(upper(opt, "pde_even_interior", even, 1e-5, p));
    out.push_back(upper(opt, "pde_odd_interior", odd, 1e-5, p));
    out.push_back(upper(opt, "pde_even_boundary", beven, 1e-5, {{"n", n}, {"step", bstep}}));
    out.push_back(upper(opt, "pde_odd_boundary", bodd, 1e-5, {{"n", n}, {"step", bstep}}));
    out.push_back(upper(opt, "convergence_ratio_deviation", std::max(4.0 - ratio_lo, ratio_hi - 4.0), 0.5,
                        {{"min_ratio", ratio_lo}, {"max_ratio", ratio_hi}}));
    out.push_back(upper(opt, "cauchy_riemann", cr, 1e-6, {{"step", 1e-3}}));

    if (n >= 2) {
        const TransformSampler u(GaussianExpansion::hermite(MultiIndex(n, 0)));
        const ScalarField ue = even_field(u);
        const ScalarField bad = [ue](const CMat& Z) { return ue(Z) + Z(0, 0) * Z(1, 1); };
        const TransformSampler w(GaussianExpansion::hermite([&] { MultiIndex a(n, 0); a[0] = 1; return a; }()));
        const VectorField uo = odd_field(w);
        const VectorField badv = [uo](const CMat& Z) { CVec v = uo(Z); v(0) += Z(0, 1); return v; };
        const SiegelPoint Z0 = SiegelPoint::base_point(n);
        out.push_back(lower("negative_control_even", pde_residual_even(bad, Z0, step).residual, 1e-2));
        out.push_back(lower("negative_control_odd", pde_residual_odd(badv, Z0, step).residual, 1e-2));
    }
    return out;
}

std::vector<CheckResult> suite_growth(const SuiteOptions& opt) {
    Rng rng(opt.seed);
    std::vector<CheckResult> out;
    for (int n = 1; n <= 2; ++n) {
        if (opt.n && *opt.n != n) continue;
        std::vector<std::vector<SiegelPoint>> paths;
        const RMat E = RMat::Identity(n, n);
        for (int p = 0; p < 3; ++p) {
            const RMat A = p == 0 ? RMat::Zero(n, n) : random_symmetric(n, 1.0, rng);
            std::vector<SiegelPoint> path;
            for (int k = 0; k <= 24; ++k) path.push_back(SiegelPoint::make(A, E * std::pow(2.0, -k)));
            paths.push_back(std::move(path));
        }
        for (int p = 0; p < 3; ++p) {
            RMat S = p == 0 ? E : random_symmetric(n, 1.0, rng);
            S /= S.norm();
            std::vector<SiegelPoint> path;
            for (int k = 0; k <= 24; ++k) path.push_back(SiegelPoint::make(S * std::pow(2.0, k), E));
            paths.push_back(std::move(path));
        }
        double worst = 0.0;
        int missing = 0, maxM = 0, maxN = 0;
        for (const MultiIndex& alpha : hermite_indices(n, 0, 6)) {
            const TransformSampler u(GaussianExpansion::hermite(alpha));
            for (const auto& path : paths) {
                const auto rep = fit_growth(even_field(u), path);
                if (!rep || !rep->respected) {
                    ++missing;
                    continue;
                }
                maxM = std::max(maxM, rep->M);
                maxN = std::max(maxN, rep->N);
                for (const auto& row : rep->rows) worst = std::max(worst, row.value / row.bound);
            }
        }
        const std::string tag = "_n" + std::to_string(n);
        out.push_back(upper(opt, "growth_bound_ratio" + tag, missing ? 1e300 : worst, 1.0,
                            {{"paths", 6}, {"max_degree", 6}, {"max_M", maxM}, {"max_N", maxN}}));
    }
    return out;
}

std::vector<CheckResult> suite_norm42(const SuiteOptions& opt) {
    Rng rng(opt.seed);
    std::vector<CheckResult> out;
    std::vector<GaussianExpansion> sources;
    for (int k : {0, 2, 4}) sources.push_back(GaussianExpansion::hermite({k}));
    for (int s = 0; s < 2; ++s) {
        GaussianExpansion e(1);
        for (int k : {0, 2, 4, 6}) {
            GaussianExpansion h = GaussianExpansion::hermite({k});
            h *= cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
            e += h;
        }
        sources.push_back(e);
    }
    std::vector<double> ratios;
    double tail = 0.0;
    for (const auto& e : sources) {
        const SiegelNormResult r = siegel_norm_n1(TransformSampler(e));
        ratios.push_back(r.value / e.norm_squared());
        tail = std::max(tail, std::abs(r.estimates[0] - r.estimates[1]) / std::abs(r.value));
    }
    double spread = 0.0;
    for (double q : ratios) spread = std::max(spread, std::abs(q / ratios[0] - 1.0));
    out.push_back(upper(opt, "siegel_norm_ratio_spread", spread, 1e-2, {{"ratios", ratios}}));
    out.push_back(upper(opt, "siegel_norm_tail_convergence", tail, 1e-3, {{"y0", SiegelNormOptions{}.y0}, {"halvings", 3}}));
    return out;
}

}  // namespace weil
