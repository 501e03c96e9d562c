#include "weilkit/transform.hpp"

#include <cmath>

#include "weilkit/errors.hpp"
#include "weilkit/evolution.hpp"

namespace weil {

namespace {

Parity expansion_parity(const GaussianExpansion& e) {
    bool has_even = false, has_odd = false;
    for (const auto& t : e.terms())
        for (const auto& [alpha, c] : t.poly.terms()) {
            int d = 0;
            for (int a : alpha) d += a;
            (d % 2 == 0 ? has_even : has_odd) = true;
        }
    if (has_even && has_odd) return Parity::Mixed;
    return has_odd ? Parity::Odd : Parity::Even;
}

std::vector<double> key_of(const CMat& Z) {
    std::vector<double> k;
    k.reserve(2 * Z.size());
    for (Eigen::Index i = 0; i < Z.size(); ++i) {
        k.push_back(Z(i).real());
        k.push_back(Z(i).imag());
    }
    return k;
}

// sum conj(f) w(x) exp((i/2) x^T Z x) dx^n with w = 1 (l < 0) or x_l.
cplx grid_pairing(const GridFunction& f, const CMat& Z, int l) {
    const GridSpec& sp = f.spec;
    const int n = sp.n;
    cplx sum = 0.0;
    std::vector<double> x(n);
    for (std::size_t k = 0; k < f.size(); ++k) {
        std::size_t r = k;
        for (int a = n - 1; a >= 0; --a) {
            x[a] = sp.coord(static_cast<int>(r % sp.N));
            r /= sp.N;
        }
        cplx q = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) q += Z(a, b) * x[a] * x[b];
        const cplx term = std::conj(f.values[k]) * std::exp(0.5 * I * q);
        sum += l < 0 ? term : term * x[l];
    }
    return sum * sp.cell();
}

}  // namespace

TransformSampler::TransformSampler(TransformSource source)
    : source_(std::make_shared<const TransformSource>(std::move(source))),
      cache_(std::make_shared<Cache>()) {
    if (const auto* g = std::get_if<GridFunction>(source_.get())) {
        n_ = g->n();
        norm_ = norm(*g);
        truncation_warning_ = boundary_decay(*g) >= 1e-6;
        if (parity_residual(*g, 1) < 1e-8)
            parity_ = Parity::Even;
        else if (parity_residual(*g, -1) < 1e-8)
            parity_ = Parity::Odd;
        else
            parity_ = Parity::Mixed;
    } else {
        const auto& e = std::get<GaussianExpansion>(*source_);
        n_ = e.n();
        norm_ = std::sqrt(std::max(0.0, e.norm_squared()));
        parity_ = expansion_parity(e);
    }
}

cplx TransformSampler::source_at_origin() const {
    const RVec zero = RVec::Zero(n_);
    if (const auto* g = std::get_if<GridFunction>(source_.get())) return interpolate(*g, zero);
    return std::get<GaussianExpansion>(*source_).evaluate(zero);
}

cplx TransformSampler::even(const CMat& Z) const {
    if (Z.rows() != n_ || Z.cols() != n_) throw DimensionError("transform: dimension mismatch");
    const auto key = key_of(Z);
    {
        std::lock_guard lock(cache_->mu);
        if (auto it = cache_->even.find(key); it != cache_->even.end()) return it->second;
    }
    cplx v;
    if (const auto* g = std::get_if<GridFunction>(source_.get()))
        v = grid_pairing(*g, Z, -1);
    else
        v = std::get<GaussianExpansion>(*source_).pairing(Polynomial::constant(n_, 1.0), Z);
    std::lock_guard lock(cache_->mu);
    cache_->even.emplace(key, v);
    return v;
}

CVec TransformSampler::odd(const CMat& Z) const {
    if (Z.rows() != n_ || Z.cols() != n_) throw DimensionError("transform: dimension mismatch");
    const auto key = key_of(Z);
    {
        std::lock_guard lock(cache_->mu);
        if (auto it = cache_->odd.find(key); it != cache_->odd.end()) return it->second;
    }
    CVec v(n_);
    for (int l = 0; l < n_; ++l) {
        if (const auto* g = std::get_if<GridFunction>(source_.get()))
            v(l) = grid_pairing(*g, Z, l);
        else
            v(l) = std::get<GaussianExpansion>(*source_).pairing(Polynomial::variable(n_, l), Z);
    }
    std::lock_guard lock(cache_->mu);
    cache_->odd.emplace(key, v);
    return v;
}

TransformResult transform_point(const TransformSampler& u, const SiegelPoint& Z) {
    return {u.even(Z.Z()), u.truncation_warning()};
}

TransformOddResult transform_odd(const TransformSampler& u, const SiegelPoint& Z) {
    return {u.odd(Z.Z()), u.truncation_warning()};
}

TransformResult boundary_transform(const TransformSampler& u, const BoundaryChartPoint& a) {
    return {u.even(a.a().cast<cplx>()), u.truncation_warning()};
}

TransformOddResult boundary_transform_odd(const TransformSampler& u, const BoundaryChartPoint& a) {
    return {u.odd(a.a().cast<cplx>()), u.truncation_warning()};
}

cplx boundary_limit(const TransformSampler& u, const BoundaryChartPoint& a) {
    const int n = a.n();
    const double ys[] = {0.04, 0.02, 0.01, 0.005};
    cplx limit = 0.0;
    for (int i = 0; i < 4; ++i) {
        double w = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) w *= ys[j] / (ys[j] - ys[i]);
        limit += w * u.even(a.a().cast<cplx>() + ys[i] * I * CMat::Identity(n, n));
    }
    return limit;
}

TransformSource act(const MetaplecticElement& m, const TransformSource& psi) {
    if (const auto* g = std::get_if<GridFunction>(&psi)) return evolution_apply_general(m, *g);
    return mp_act(m, std::get<GaussianExpansion>(psi));
}

namespace {

double gaussian_norm(const SiegelPoint& Z) {
    const auto s = GaussianState::make(1.0, Z);
    return std::sqrt(inner_product(s, s).real());
}

}  // namespace

double equivariance_check_even(const MetaplecticElement& m, const TransformSource& psi,
                               const SiegelPoint& Z) {
    const TransformSampler u(psi);
    const TransformSampler v(act(mp_inv(m), psi));
    const cplx eps = branch_continue(m, Z);
    const SiegelPoint gZ = siegel_action(m.g(), Z);
    const cplx lhs = v.even(Z.Z());
    const cplx rhs = u.even(gZ.Z()) / eps;
    return std::abs(lhs - rhs) / (u.source_norm() * gaussian_norm(Z));
}

double equivariance_check_odd(const MetaplecticElement& m, const TransformSource& psi,
                              const SiegelPoint& Z) {
    const TransformSampler u(psi);
    const TransformSampler v(act(mp_inv(m), psi));
    const cplx eps = branch_continue(m, Z);
    const SiegelPoint gZ = siegel_action(m.g(), Z);
    const CMat T = m.g().C().cast<cplx>() * Z.Z() + m.g().D().cast<cplx>();
    const CVec lhs = T * v.odd(Z.Z());
    const CVec rhs = u.odd(gZ.Z()) / eps;
    return (lhs - rhs).norm() / (u.source_norm() * gaussian_norm(Z));
}

ScalarField even_field(const TransformSampler& u) {
    return [u](const CMat& Z) { return u.even(Z); };
}

VectorField odd_field(const TransformSampler& u) {
    return [u](const CMat& Z) { return u.odd(Z); };
}

CMat z_direction(int n, int j, int k) {
    CMat D = CMat::Zero(n, n);
    D(j, k) += 0.5;
    D(k, j) += 0.5;
    return D;
}

cplx mixed_second_derivative(const ScalarField& f, const CMat& Z, const CMat& Da,
                             const CMat& Db, double h) {
    const CMat p = h * (Da + Db), q = h * (Da - Db);
    return (f(Z + p) - f(Z + q) - f(Z - q) + f(Z - p)) / (4.0 * h * h);
}

cplx first_derivative(const ScalarField& f, const CMat& Z, const CMat& Da, double h) {
    return (f(Z + h * Da) - f(Z - h * Da)) / (2.0 * h);
}

namespace {

void check_step(double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw StepError("step must be positive");
}

void check_margin(const SiegelPoint& Z, double step) {
    check_step(step);
    if (Z.min_imag_eigenvalue() <= 2.0 * step)
        throw StepError("step too large for the Im Z margin");
}

// All symmetric-index pairs (j <= k).
std::vector<std::pair<int, int>> index_pairs(int n) {
    std::vector<std::pair<int, int>> p;
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) p.emplace_back(j, k);
    return p;
}

int pair_slot(int n, int j, int k) {
    if (j > k) std::swap(j, k);
    int slot = 0;
    for (int a = 0; a < j; ++a) slot += n - a;
    return slot + (k - j);
}

// Residual components of the even system at one step.
std::vector<cplx> even_components(const ScalarField& u, const CMat& Z, double h) {
    const int n = static_cast<int>(Z.rows());
    const auto pairs = index_pairs(n);
    const int P = static_cast<int>(pairs.size());
    std::vector<cplx> S(P * P);
    for (int p = 0; p < P; ++p)
        for (int q = p; q < P; ++q) {
            const cplx v = mixed_second_derivative(
                u, Z, z_direction(n, pairs[p].first, pairs[p].second),
                z_direction(n, pairs[q].first, pairs[q].second), h);
            S[p * P + q] = S[q * P + p] = v;
        }
    std::vector<cplx> out;
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (int m = 0; m < n; ++m) {
                    const cplx lhs = S[pair_slot(n, j, l) * P + pair_slot(n, k, m)];
                    const cplx rhs = S[pair_slot(n, j, m) * P + pair_slot(n, k, l)];
                    out.push_back(lhs - rhs);
                }
    return out;
}

std::vector<cplx> odd_components(const VectorField& u, const CMat& Z, double h) {
    const int n = static_cast<int>(Z.rows());
    std::vector<CVec> d(n * n);
    for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
            const CMat D = z_direction(n, j, k);
            d[j * n + k] = d[k * n + j] = (u(Z + h * D) - u(Z - h * D)) / (2.0 * h);
        }
    std::vector<cplx> out;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) out.push_back(d[j * n + k](l) - d[j * n + l](k));
    return out;
}

PdeResidual richardson(const std::vector<cplx>& coarse, const std::vector<cplx>& fine) {
    PdeResidual r{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        r.raw_step = std::max(r.raw_step, std::abs(coarse[i]));
        r.raw_half = std::max(r.raw_half, std::abs(fine[i]));
        r.residual = std::max(r.residual, std::abs((4.0 * fine[i] - coarse[i]) / 3.0));
    }
    r.ratio = r.raw_half > 0.0 ? r.raw_step / r.raw_half : 0.0;
    return r;
}

}  // namespace

PdeResidual pde_residual_even(const ScalarField& u, const SiegelPoint& Z, double step) {
    check_margin(Z, step);
    return richardson(even_components(u, Z.Z(), step), even_components(u, Z.Z(), step / 2));
}

PdeResidual pde_residual_odd(const VectorField& u, const SiegelPoint& Z, double step) {
    check_margin(Z, step);
    return richardson(odd_components(u, Z.Z(), step), odd_components(u, Z.Z(), step / 2));
}

PdeResidual pde_residual_boundary_even(const ScalarField& u, const BoundaryChartPoint& a,
                                       double step) {
    check_step(step);
    const CMat Z = a.a().cast<cplx>();
    return richardson(even_components(u, Z, step), even_components(u, Z, step / 2));
}

PdeResidual pde_residual_boundary_odd(const VectorField& u, const BoundaryChartPoint& a,
                                      double step) {
    check_step(step);
    const CMat Z = a.a().cast<cplx>();
    return richardson(odd_components(u, Z, step), odd_components(u, Z, step / 2));
}

double cauchy_riemann_residual(const ScalarField& u, const SiegelPoint& Z, double step) {
    check_margin(Z, step);
    const int n = Z.n();
    double worst = 0.0;
    for (const auto& [j, k] : index_pairs(n)) {
        const CMat D = z_direction(n, j, k);
        auto cr = [&](double h) {
            return first_derivative(u, Z.Z(), D, h) - first_derivative(u, Z.Z(), I * D, h) / I;
        };
        worst = std::max(worst, std::abs((4.0 * cr(step / 2) - cr(step)) / 3.0));
    }
    return worst;
}

GrowthReport growth_probe(const ScalarField& u, const std::vector<SiegelPoint>& path, double C,
                          int M, int N) {
    GrowthReport rep{C, M, N, true, {}};
    for (const auto& Z : path) {
        const double detim = Z.Z().imag().determinant();
        const double bound = C * std::pow(1.0 + Z.Z().norm(), M) * std::pow(1.0 + 1.0 / std::abs(detim), N);
        const double value = std::abs(u(Z.Z()));
        rep.rows.push_back({Z.Z(), value, bound});
        if (value > bound) rep.respected = false;
    }
    return rep;
}

std::optional<GrowthReport> fit_growth(const ScalarField& u, const std::vector<SiegelPoint>& path,
                                       int max_exponent, double margin) {
    if (path.empty()) return std::nullopt;
    const std::size_t half = std::max<std::size_t>(1, path.size() / 2);
    for (int total = 0; total <= 2 * max_exponent; ++total)
        for (int M = 0; M <= std::min(total, max_exponent); ++M) {
            const int N = total - M;
            if (N > max_exponent) continue;
            const auto probe = growth_probe(u, {path.begin(), path.begin() + half}, 1.0, M, N);
            double C = 0.0;
            for (const auto& row : probe.rows) C = std::max(C, row.value / row.bound);
            C = margin * std::max(C, 1e-300);
            auto rep = growth_probe(u, path, C, M, N);
            if (rep.respected) return rep;
        }
    return std::nullopt;
}

}  // namespace weil
