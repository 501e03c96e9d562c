#include <algorithm>
#include <cmath>

#include "weilkit/errors.hpp"
#include "weilkit/evolution.hpp"
#include "weilkit/gaussian.hpp"
#include "weilkit/propagator.hpp"
#include "weilkit/random.hpp"
#include "weilkit/suites.hpp"

namespace weil {

using detail::grid_for;
using detail::lower;
using detail::upper;

namespace {

struct Window {
    double im_lo, im_hi, re_max;
};

// Gaussians that stay well decayed and band-limited on the default grids.
Window window_for(const GridSpec& sp) {
    const double decay = 60.0 / (sp.R * sp.R);
    const double band = pi / sp.dx();
    return {std::max(decay, 0.1), std::min(5.0, band / 10.0), std::min(3.0, band / 16.0)};
}

bool resolvable(const CMat& Z, const Window& w) {
    const RMat im = Z.imag();
    Eigen::SelfAdjointEigenSolver<RMat> es(im);
    return es.eigenvalues().minCoeff() >= w.im_lo && es.eigenvalues().maxCoeff() <= w.im_hi &&
           Z.real().cwiseAbs().maxCoeff() <= w.re_max;
}

MetaplecticElement random_element(int n, Rng& rng) {
    MetaplecticElement m = random_flow_element(n, rng, 0.4);
    const int extra = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < extra; ++i) m = mp_mul(random_generator_element(n, rng), m);
    return m;
}

// H f with H = 1/2 x a x - 1/2 d c d + i x b d + (i/2) tr b.
GridFunction apply_hamiltonian(const QuadraticHamiltonian& H, const GridFunction& f) {
    const int n = H.n();
    std::vector<GridFunction> d;
    for (int k = 0; k < n; ++k) d.push_back(spectral_derivative(f, k));
    GridFunction out = multiply(f, [&](const RVec& x) {
        return cplx(0.5 * x.dot(H.a() * x), 0.5 * H.b().trace());
    });
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (H.c()(j, k) != 0.0) out = out - cplx(0.5 * H.c()(j, k)) * spectral_derivative(d[j], k);
            if (H.b()(j, k) != 0.0)
                out = out + multiply(d[k], [&](const RVec& x) { return I * H.b()(j, k) * x(j); });
        }
    return out;
}

}  // namespace

std::vector<CheckResult> suite_evolution(const SuiteOptions& opt) {
    Rng rng(opt.seed);
    std::vector<CheckResult> out;
    double unit = 0.0, parity = 0.0;
    auto track = [&](const GridFunction& f, const GridFunction& Uf, int par) {
        unit = std::max(unit, std::abs(norm(Uf) - norm(f)) / norm(f));
        parity = std::max(parity, parity_residual(Uf, par));
    };

    const std::vector<std::pair<int, int>> plan{{1, 50}, {2, 20}};
    for (auto [n, count] : plan) {
        if (opt.n && *opt.n != n) continue;
        const GridSpec sp = grid_for(opt, n);
        const Window win = window_for(sp);
        double worst = 0.0;
        int done = 0, tries = 0;
        while (done < count) {
            if (++tries > 200 * count) throw DomainError("evolution suite: no resolvable samples");
            const MetaplecticElement m = random_element(n, rng);
            const SiegelPoint Z = random_siegel(n, rng, 0.5, 0.5, 2.0);
            if (!resolvable(Z.Z(), win)) continue;
            const GaussianState s = GaussianState::make(1.0, Z);
            const GaussianState t = mp_act(m, s);
            if (!resolvable(t.Z(), win)) continue;
            const GridFunction f = sample_gaussian(s, sp);
            const GridFunction Uf = evolution_apply_general(m, f);
            worst = std::max(worst, relative_error(Uf, sample_gaussian(t, sp)));
            track(f, Uf, 1);
            ++done;
        }
        out.push_back(upper(opt, "gaussian_evolution_vs_mp_act_n" + std::to_string(n), worst, 1e-6,
                            {{"n", n}, {"R", sp.R}, {"N", sp.N}, {"samples", count}}));
    }

    if (!opt.n || *opt.n == 1) {
        const GridSpec sp = grid_for(opt, 1);
        const Window win = window_for(sp);
        double conj = 0.0, repr = 0.0;
        int done = 0;
        while (done < 100) {
            const MetaplecticElement m = random_element(1, rng);
            const SiegelPoint Z = random_siegel(1, rng, 0.3, 0.7, 1.5);
            if (!resolvable(mp_act(m, GaussianState::make(1.0, Z)).Z(), win)) continue;
            const GridFunction f = sample_gaussian(GaussianState::make(1.0, Z), sp);
            conj = std::max(conj, conjugation_residual(m, random_heisenberg(1, rng), f));
            ++done;
        }
        out.push_back(upper(opt, "conjugation_property", conj, 1e-5, {{"n", 1}, {"samples", 100}}));

        done = 0;
        while (done < 10) {
            const MetaplecticElement m1 = random_element(1, rng), m2 = random_element(1, rng);
            const SiegelPoint Z = SiegelPoint::base_point(1);
            const GaussianState s = GaussianState::make(1.0, Z);
            if (!resolvable(mp_act(m2, s).Z(), win) || !resolvable(mp_act(mp_mul(m1, m2), s).Z(), win)) continue;
            const GridFunction f = sample_gaussian(s, sp);
            repr = std::max(repr, relative_error(evolution_apply_general(mp_mul(m1, m2), f),
                                                 evolution_apply_general(m1, evolution_apply_general(m2, f))));
            ++done;
        }
        out.push_back(upper(opt, "representation_property", repr, 1e-6, {{"n", 1}, {"samples", 10}}));

        // Hermite states of both parities under generator elements.
        for (int k = 0; k <= 5; ++k) {
            const GridFunction f = hermite_state({k}, sp);
            for (const auto& m : {mp_fourier(1), mp_rotation(1, 0.6), mp_shear(RMat::Constant(1, 1, 0.8)),
                                  mp_gl(RMat::Constant(1, 1, 1.3))})
                track(f, evolution_apply_general(m, f), k % 2 ? -1 : 1);
        }

        // -i [H, h] = (X h)^ on a packet.
        double comm = 0.0;
        const GridFunction f = sample_gaussian(GaussianState::make(1.0, SiegelPoint::make(RMat::Constant(1, 1, 0.2), RMat::Constant(1, 1, 1.0))), sp);
        for (int s = 0; s < 10; ++s) {
            const QuadraticHamiltonian H = random_hamiltonian(1, 0.5, rng, false);
            const HeisenbergVector h = random_heisenberg(1, rng);
            const GridFunction lhs = cplx(0, -1) * (apply_hamiltonian(H, apply_heisenberg(f, h)) -
                                                    apply_heisenberg(apply_hamiltonian(H, f), h));
            RVec vw(2);
            vw << h.v, h.w;
            const RVec Xh = generator_matrix(H) * vw;
            const GridFunction rhs = apply_heisenberg(f, HeisenbergVector{Xh.head(1), Xh.tail(1)});
            comm = std::max(comm, norm(lhs - rhs) / (norm(f) * (1.0 + vw.norm()) * (1.0 + generator_matrix(H).norm())));
        }
        out.push_back(upper(opt, "generator_commutator", comm, 1e-8, {{"n", 1}, {"samples", 10}}));
    }
    out.push_back(upper(opt, "evolution_unitarity", unit, 1e-8));
    out.push_back(upper(opt, "evolution_parity", parity, 1e-10));
    return out;
}

std::vector<CheckResult> suite_propagator(const SuiteOptions& opt) {
    Rng rng(opt.seed);
    std::vector<CheckResult> out;

    if (!opt.n || *opt.n == 1) {
        const GridSpec sp = grid_for(opt, 1);
        const GridFunction f = sample_gaussian(
            GaussianState::make(1.0, SiegelPoint::make(RMat::Constant(1, 1, 0.3), RMat::Constant(1, 1, 1.2))), sp);
        double worst = 0.0, order = 1e300, vs_evo = 0.0;
        int done = 0;
        while (done < 5) {
            // Confining Hamiltonians keep the packet inside the box for all t.
            const QuadraticHamiltonian R0 = random_hamiltonian(1, 0.4, rng);
            const QuadraticHamiltonian H(RMat(R0.a().cwiseAbs() + RMat::Constant(1, 1, 0.3)), R0.b(), R0.c());
            const double t = uniform(rng, 0.5, 1.5);
            const SymplecticMatrix g = hamiltonian_flow(H, t);
            if (std::abs(g.C().determinant()) < 0.2) continue;
            const GridFunction Kf = propagate_grid(build_kernel(H, t), f);
            if (boundary_decay(Kf) > 1e-10) continue;
            const double e128 = relative_error(reference_integrator(H, t, f, 128), Kf);
            const double e256 = relative_error(reference_integrator(H, t, f, 256), Kf);
            worst = std::max(worst, e256);
            order = std::min(order, e128 / e256);
            vs_evo = std::max(vs_evo, relative_error(Kf, evolution_apply_general(mp_flow(H, t), f)));
            ++done;
        }
        out.push_back(upper(opt, "kernel_vs_splitting_n1", worst, 1e-5, {{"steps", 256}, {"samples", 5}}));
        out.push_back(lower("splitting_convergence_ratio", order, 3.5, {{"steps", {128, 256}}}));
        out.push_back(upper(opt, "kernel_vs_evolution", vs_evo, 1e-6, {{"samples", 5}}));

        const auto osc = QuadraticHamiltonian::harmonic_oscillator(1);
        double semi = 0.0;
        for (auto [t1, t2] : {std::pair{0.7, 1.1}, std::pair{2.0, 2.0}, std::pair{1.2, 3.3}}) {
            const GridFunction a = propagate_grid(build_kernel(osc, t1), propagate_grid(build_kernel(osc, t2), f));
            semi = std::max(semi, relative_error(a, propagate_grid(build_kernel(osc, t1 + t2), f)));
        }
        out.push_back(upper(opt, "kernel_semigroup", semi, 1e-6, {{"pairs", {{0.7, 1.1}, {2.0, 2.0}, {1.2, 3.3}}}}));
    }

    double mehler = 0.0;
    for (double t : {pi / 4, 1.0, 2.5, 4.0}) {
        const PropagatorKernel K = build_kernel(QuadraticHamiltonian::harmonic_oscillator(1), t);
        // Branch of sqrt(sin t) follows the continuation through t = pi.
        const cplx root = std::sin(t) > 0 ? std::sqrt(2 * pi * I * std::sin(t)) : I * std::sqrt(-2 * pi * I * std::sin(t));
        for (int s = 0; s < 5; ++s) {
            RVec x(1), y(1);
            x << uniform(rng, -3, 3);
            y << uniform(rng, -3, 3);
            const cplx ref = std::polar(1.0, ((x(0) * x(0) + y(0) * y(0)) * std::cos(t) - 2 * x(0) * y(0)) /
                                                 (2 * std::sin(t))) / root;
            mehler = std::max(mehler, std::abs(kernel_evaluate(K, x, y) - ref));
        }
    }
    out.push_back(upper(opt, "mehler_kernel_values", mehler, 1e-8, {{"t", {pi / 4, 1.0, 2.5, 4.0}}}));

    if (!opt.n || *opt.n == 2) {
        const GridSpec sp = opt.grid && opt.grid->n == 2 ? *opt.grid : GridSpec::make(2, 8.0, 64);
        const auto osc = QuadraticHamiltonian::harmonic_oscillator(2);
        const GridFunction f = sample_gaussian(
            GaussianState::make(1.0, SiegelPoint::make(RMat::Constant(2, 2, 0.1), RMat(RMat::Identity(2, 2) * 1.3))), sp);
        const double t = 1.0;
        const double e = relative_error(reference_integrator(osc, t, f, 256), propagate_grid(build_kernel(osc, t), f));
        out.push_back(upper(opt, "kernel_vs_splitting_oscillator_n2", e, 1e-5, {{"R", sp.R}, {"N", sp.N}, {"steps", 256}}));
    }
    return out;
}

}  // namespace weil
