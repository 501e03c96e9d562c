#include "weilkit/suites.hpp"

#include <algorithm>
#include <cmath>

#include "weilkit/errors.hpp"
#include "weilkit/grid.hpp"
#include "weilkit/random.hpp"
#include "weilkit/siegel.hpp"

namespace weil {

namespace detail {

CheckResult upper(const SuiteOptions& opt, std::string check, double residual, double tolerance,
                  nlohmann::json params) {
    const double tol = opt.tol.value_or(tolerance);
    const bool pass = std::isfinite(residual) && residual < tol;
    return {std::move(check), residual, tol, pass, std::move(params), false};
}

CheckResult lower(std::string check, double residual, double threshold, nlohmann::json params) {
    const bool pass = std::isfinite(residual) && residual > threshold;
    return {std::move(check), residual, threshold, pass, std::move(params), true};
}

GridSpec grid_for(const SuiteOptions& opt, int n) {
    if (opt.grid && opt.grid->n == n) return *opt.grid;
    return default_grid(n);
}

}  // namespace detail

using detail::lower;
using detail::upper;

nlohmann::json to_json(const CheckResult& r) {
    nlohmann::json j = {{"check", r.check},
                        {"residual", r.residual},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass},
                        {"params", r.params}};
    if (r.lower_bound) j["bound"] = "lower";
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"symplectic", "cocycle",  "evolution", "propagator",
                                                "equivariance", "pde", "growth", "norm42"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opt) {
    if (name == "symplectic") return suite_symplectic(opt);
    if (name == "cocycle") return suite_cocycle(opt);
    if (name == "evolution") return suite_evolution(opt);
    if (name == "propagator") return suite_propagator(opt);
    if (name == "equivariance") return suite_equivariance(opt);
    if (name == "pde") return suite_pde(opt);
    if (name == "growth") return suite_growth(opt);
    if (name == "norm42") return suite_norm42(opt);
    throw DomainError("unknown suite: " + name);
}

namespace {

double rel(double err, double scale) { return err / std::max(1.0, scale); }

double matrix_gap(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    return rel((a.matrix() - b.matrix()).norm(), a.matrix().norm());
}

double element_gap(const MetaplecticElement& a, const MetaplecticElement& b) {
    return std::max(matrix_gap(a.g(), b.g()), std::abs(a.eps0() - b.eps0()) / std::abs(a.eps0()));
}

int random_dim(Rng& rng, const SuiteOptions& opt, int max_n = 3) {
    if (opt.n) return *opt.n;
    return std::uniform_int_distribution<int>(1, max_n)(rng);
}

std::vector<MetaplecticElement> random_word(int n, int length, Rng& rng) {
    std::vector<MetaplecticElement> w;
    for (int i = 0; i < length; ++i) w.push_back(random_generator_element(n, rng));
    return w;
}

MetaplecticElement fold_left(const std::vector<MetaplecticElement>& w) {
    MetaplecticElement p = w.front();
    for (std::size_t i = 1; i < w.size(); ++i) p = mp_mul(p, w[i]);
    return p;
}

MetaplecticElement fold_right(const std::vector<MetaplecticElement>& w) {
    MetaplecticElement p = w.back();
    for (std::size_t i = w.size() - 1; i-- > 0;) p = mp_mul(w[i], p);
    return p;
}

double center_distance(const MetaplecticElement& m) {
    const int n = m.n();
    const double sp = (m.g().matrix() - RMat::Identity(2 * n, 2 * n)).norm();
    const double e = std::min(std::abs(m.eps0() - 1.0), std::abs(m.eps0() + 1.0));
    return std::max(sp, e);
}

}  // namespace

std::vector<CheckResult> suite_symplectic(const SuiteOptions& opt) {
    Rng rng(opt.seed);
    std::vector<CheckResult> out;

    double prod = 0.0;
    for (int s = 0; s < 1000; ++s) {
        const int n = random_dim(rng, opt);
        const int len = std::uniform_int_distribution<int>(1, 5)(rng);
        const auto w = random_word(n, len, rng);
        const RMat M = fold_left(w).g().matrix();
        prod = std::max(prod, rel(is_symplectic(M, 1.0).residual, M.squaredNorm()));
    }
    out.push_back(upper(opt, "generator_products_symplectic", prod, 1e-9, {{"samples", 1000}}));

    double group = 0.0, deriv_ratio_err = 0.0, kernel_sym = 0.0;
    for (int s = 0; s < 200; ++s) {
        const int n = random_dim(rng, opt);
        const auto H = random_hamiltonian(n, 0.7, rng, false);
        const double t1 = uniform(rng, -1.5, 1.5), t2 = uniform(rng, -1.5, 1.5);
        group = std::max(group, matrix_gap(compose(hamiltonian_flow(H, t1), hamiltonian_flow(H, t2)),
                                           hamiltonian_flow(H, t1 + t2)));
        const RMat X = generator_matrix(H);
        const RMat Id = RMat::Identity(2 * n, 2 * n);
        auto fd = [&](double h) {
            return ((hamiltonian_flow(H, h).matrix() - Id) / h - X).norm();
        };
        const double ratio = fd(1e-3) / fd(1e-4);
        deriv_ratio_err = std::max(deriv_ratio_err, std::abs(ratio - 10.0) / 10.0);
    }
    out.push_back(upper(opt, "flow_one_parameter_group", group, 1e-9, {{"samples", 200}}));
    out.push_back(upper(opt, "flow_first_order_derivative", deriv_ratio_err, 0.2,
                        {{"samples", 200}, {"steps", {1e-3, 1e-4}}}));

    int used = 0;
    while (used < 1000) {
        const int n = random_dim(rng, opt);
        const auto H = random_hamiltonian(n, 0.7, rng, false);
        const SymplecticMatrix g = hamiltonian_flow(H, uniform(rng, 0.2, 2.0));
        const RMat C = g.C();
        if (std::abs(C.determinant()) < 1e-2) continue;
        const RMat Ci = C.inverse();
        const RMat AC = g.A() * Ci, CD = Ci * g.D();
        kernel_sym = std::max({kernel_sym, rel((AC - AC.transpose()).norm(), AC.norm()),
                               rel((CD - CD.transpose()).norm(), CD.norm())});
        ++used;
    }
    out.push_back(upper(opt, "kernel_blocks_symmetric", kernel_sym, 1e-9, {{"samples", 1000}}));

    double heis = 0.0;
    for (int s = 0; s < 200; ++s) {
        const int n = random_dim(rng, opt);
        const auto g1 = random_generator_element(n, rng).g();
        const auto g2 = random_generator_element(n, rng).g();
        const auto h = random_heisenberg(n, rng);
        const auto a = heisenberg_transform(compose(g1, g2), h);
        const auto b = heisenberg_transform(g1, heisenberg_transform(g2, h));
        heis = std::max(heis, rel((a.v - b.v).norm() + (a.w - b.w).norm(), a.v.norm() + a.w.norm()));
    }
    out.push_back(upper(opt, "heisenberg_action_composes", heis, 1e-10, {{"samples", 200}}));
    return out;
}

std::vector<CheckResult> suite_cocycle(const SuiteOptions& opt) {
    Rng rng(opt.seed);
    std::vector<CheckResult> out;

    double assoc = 0.0, ident = 0.0, square = 0.0;
    for (int s = 0; s < 500; ++s) {
        const int n = random_dim(rng, opt);
        const int len = std::uniform_int_distribution<int>(1, 5)(rng);
        auto w = random_word(n, len, rng);
        if (w.size() < 3) w.push_back(random_generator_element(n, rng));
        const auto L = fold_left(w), R = fold_right(w);
        assoc = std::max(assoc, element_gap(L, R));

        const RMat Cm = L.g().C(), Dm = L.g().D();
        const cplx det = (Cm.cast<cplx>() * I + Dm.cast<cplx>()).determinant();
        square = std::max(square, std::abs(L.eps0() * L.eps0() - det) / std::abs(det));

        std::vector<MetaplecticElement> back = w;
        for (auto it = w.rbegin(); it != w.rend(); ++it) back.push_back(mp_inv(*it));
        ident = std::max(ident, center_distance(fold_left(back)));
    }
    // Relations that close in Sp without cancelling letter by letter.
    for (int n = 1; n <= 3; ++n) {
        const auto F = mp_fourier(n);
        ident = std::max(ident, center_distance(fold_left({F, F, F, F})));
        const double t1 = uniform(rng, 0.0, pi), t2 = uniform(rng, 0.0, pi);
        ident = std::max(ident, center_distance(fold_left(
                                    {mp_rotation(n, t1), mp_rotation(n, t2), mp_rotation(n, 2 * pi - t1 - t2)})));
        const RMat B = random_symmetric(n, 0.8, rng);
        ident = std::max(ident, center_distance(mp_mul(mp_shear(B), mp_shear(-B))));
    }
    out.push_back(upper(opt, "mp_mul_associativity", assoc, 1e-9, {{"words", 500}, {"max_length", 5}}));
    out.push_back(upper(opt, "identity_words_central", ident, 1e-9, {{"words", 509}}));
    out.push_back(upper(opt, "eps0_squares_to_det", square, 1e-9, {{"words", 500}}));

    double cocycle = 0.0, act = 0.0, path = 0.0, unit = 0.0, annih = 0.0;
    int outside = 0;
    for (int s = 0; s < 500; ++s) {
        const int n = random_dim(rng, opt);
        const auto m1 = fold_left(random_word(n, std::uniform_int_distribution<int>(1, 3)(rng), rng));
        const auto m2 = fold_left(random_word(n, std::uniform_int_distribution<int>(1, 3)(rng), rng));
        const SiegelPoint Z = random_siegel(n, rng);

        const SiegelPoint gZ = siegel_action(m2.g(), Z);
        if (min_symmetric_eigenvalue(RMat(gZ.Z().imag())) <= 0.0) ++outside;
        const cplx lhs = branch_continue(mp_mul(m1, m2), Z);
        const cplx rhs = branch_continue(m1, gZ) * branch_continue(m2, Z);
        cocycle = std::max(cocycle, std::abs(lhs - rhs) / std::abs(lhs));

        const std::vector<CMat> via{CMat(2.0 * I * CMat::Identity(n, n)),
                                    CMat(Z.Z() + I * CMat::Identity(n, n))};
        const cplx straight = branch_continue(m1, Z);
        path = std::max(path, std::abs(branch_continue_path(m1, via, Z.Z()) - straight) / std::abs(straight));

        const GaussianState st = GaussianState::make(cplx(uniform(rng, 0.5, 2), uniform(rng, -1, 1)), Z);
        const GaussianState a = mp_act(mp_mul(m1, m2), st);
        const GaussianState b = mp_act(m1, mp_act(m2, st));
        act = std::max({act, std::abs(a.lambda() - b.lambda()) / std::abs(a.lambda()),
                        rel((a.Z() - b.Z()).norm(), a.Z().norm())});

        const double n0 = inner_product(st, st).real();
        unit = std::max(unit, std::abs(inner_product(a, a).real() - n0) / n0);

        // Annihilators of psi_Z are carried to annihilators of U psi_Z.
        std::vector<RVec> xs;
        for (int k = 0; k < 4; ++k) xs.push_back(RVec::NullaryExpr(n, [&](Eigen::Index) { return uniform(rng, -1.5, 1.5); }));
        for (int k = 0; k < n; ++k) {
            const CVec w = CVec::Unit(n, k);
            const CVec v = Z.Z() * w;
            const auto [v2, w2] = heisenberg_transform(m1.g(), v, w);
            const GaussianState t = mp_act(m1, st);
            const double scale = std::abs(t.lambda()) * (v2.norm() + w2.norm() * (1.0 + t.Z().norm())) * 3.0;
            annih = std::max(annih, annihilation_residual(t, v2, w2, xs) / scale);
        }
    }
    out.push_back(upper(opt, "branch_cocycle_identity", cocycle, 1e-9, {{"samples", 500}}));
    out.push_back(upper(opt, "mp_act_group_action", act, 1e-8, {{"samples", 500}}));
    out.push_back(upper(opt, "branch_path_independence", path, 1e-9, {{"samples", 500}}));
    out.push_back(upper(opt, "siegel_action_invariance_failures", outside, 0.5, {{"samples", 500}}));
    out.push_back(upper(opt, "gaussian_unitarity", unit, 1e-8, {{"samples", 500}}));
    out.push_back(upper(opt, "annihilation_frame_equivariance", annih, 1e-9, {{"samples", 500}}));

    // Fourier powers at a = 1/2: phases snap to k pi/2 and the centre shifts k by 2.
    const BoundaryChartPoint a = BoundaryChartPoint::make(RMat::Constant(1, 1, 0.5));
    std::vector<int> ks;
    double snap = 0.0;
    MetaplecticElement p = mp_identity(1);
    for (int k = 0; k < 8; ++k) {
        const MaslovPhase ph = maslov_boundary_phase(p, a);
        ks.push_back(ph.k);
        snap = std::max(snap, ph.snap_residual);
        p = mp_mul(mp_fourier(1), p);
    }
    int broken = 0;
    for (int k = 0; k < 4; ++k)
        if ((ks[k] + 2) % 4 != ks[k + 4]) ++broken;
    out.push_back(upper(opt, "maslov_fourier_snap", snap, 1e-3, {{"a", 0.5}, {"k", ks}}));
    out.push_back(upper(opt, "maslov_fourier_cyclic_breaks", broken, 0.5, {{"a", 0.5}, {"k", ks}}));
    return out;
}

}  // namespace weil
