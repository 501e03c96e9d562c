#include "weilkit/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "weilkit/errors.hpp"
#include "weilkit/parallel.hpp"

namespace weil {

GridSpec GridSpec::make(int n, double R, int N) {
    if (n < 1 || n > 3) throw DimensionError("GridSpec: n must be 1, 2 or 3");
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("GridSpec: R must be positive");
    if (N <= 0 || N % 2 != 0) throw DomainError("GridSpec: N must be even and positive");
    return GridSpec{n, R, N};
}

std::size_t GridSpec::size() const noexcept {
    std::size_t s = 1;
    for (int a = 0; a < n; ++a) s *= static_cast<std::size_t>(N);
    return s;
}

double GridSpec::cell() const noexcept { return std::pow(dx(), n); }

std::vector<int> GridSpec::multi_index(std::size_t flat) const {
    std::vector<int> idx(n);
    for (int a = n - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % N);
        flat /= N;
    }
    return idx;
}

std::size_t GridSpec::flat_index(const std::vector<int>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < n; ++a) flat = flat * N + idx[a];
    return flat;
}

RVec GridSpec::point(std::size_t flat) const {
    RVec x(n);
    for (int a = n - 1; a >= 0; --a) {
        x(a) = coord(static_cast<int>(flat % N));
        flat /= N;
    }
    return x;
}

GridSpec GridSpec::dual() const { return GridSpec{n, pi * N / (2.0 * R), N}; }

GridSpec default_grid(int n) {
    switch (n) {
        case 1: return GridSpec::make(1, 12.0, 1024);
        case 2: return GridSpec::make(2, 8.0, 256);
        case 3: return GridSpec::make(3, 6.0, 64);
        default: throw DimensionError("default_grid: n must be 1, 2 or 3");
    }
}

GridFunction::GridFunction(const GridSpec& s, std::vector<cplx> v) : spec(s), values(std::move(v)) {
    if (values.size() != spec.size()) throw DimensionError("GridFunction: sample count mismatch");
}

GridFunction sample(const GridSpec& spec, const std::function<cplx(const RVec&)>& f) {
    GridFunction g(spec);
    parallel_for(0, g.size(), [&](std::size_t k) { g.values[k] = f(spec.point(k)); });
    return g;
}

GridFunction sample_gaussian(const GaussianState& s, const GridSpec& spec) {
    if (s.n() != spec.n) throw DimensionError("sample_gaussian: dimension mismatch");
    return sample(spec, [&](const RVec& x) { return evaluate(s, x); });
}

GridFunction sample_expansion(const GaussianExpansion& e, const GridSpec& spec) {
    if (e.n() != spec.n) throw DimensionError("sample_expansion: dimension mismatch");
    return sample(spec, [&](const RVec& x) { return e.evaluate(x); });
}

namespace {

std::vector<double> hermite_1d(const GridSpec& spec, int k) {
    std::vector<double> prev(spec.N, 0.0), cur(spec.N);
    for (int j = 0; j < spec.N; ++j) {
        const double x = spec.coord(j);
        cur[j] = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
    }
    for (int m = 0; m < k; ++m) {
        const double a = std::sqrt(2.0 / (m + 1));
        const double b = std::sqrt(static_cast<double>(m) / (m + 1));
        std::vector<double> next(spec.N);
        for (int j = 0; j < spec.N; ++j) next[j] = a * spec.coord(j) * cur[j] - b * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

GridFunction hermite_state(const std::vector<int>& alpha, const GridSpec& spec) {
    if (static_cast<int>(alpha.size()) != spec.n)
        throw DimensionError("hermite_state: multi-index length must equal n");
    int total = 0;
    for (int a : alpha) {
        if (a < 0) throw DomainError("hermite_state: negative index");
        total += a;
    }
    if (total > 12) throw DomainError("hermite_state: |alpha| must be <= 12");
    std::vector<std::vector<double>> axes;
    for (int a : alpha) axes.push_back(hermite_1d(spec, a));
    GridFunction g(spec);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto idx = spec.multi_index(k);
        double v = 1.0;
        for (int a = 0; a < spec.n; ++a) v *= axes[a][idx[a]];
        g.values[k] = v;
    }
    return g;
}

double norm(const GridFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    return std::sqrt(s * f.spec.cell());
}

cplx inner(const GridFunction& f, const GridFunction& g) {
    if (!(f.spec == g.spec)) throw DimensionError("inner: grids differ");
    cplx s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += std::conj(f.values[k]) * g.values[k];
    return s * f.spec.cell();
}

double relative_error(const GridFunction& f, const GridFunction& g) {
    return norm(f - g) / norm(g);
}

double boundary_decay(const GridFunction& f) {
    double shell = 0.0, all = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double m = std::abs(f.values[k]);
        all = std::max(all, m);
        const auto idx = f.spec.multi_index(k);
        for (int j : idx)
            if (j == 0 || j == f.spec.N - 1) {
                shell = std::max(shell, m);
                break;
            }
    }
    return all > 0.0 ? shell / all : 0.0;
}

double parity_residual(const GridFunction& f, int parity) {
    // Cell-centered: -x_j sits at index N - 1 - j on every axis, so x -> -x
    // reverses the flat index.
    double diff = 0.0, total = 0.0;
    const std::size_t S = f.size();
    for (std::size_t k = 0; k < S; ++k) {
        diff += std::norm(f.values[S - 1 - k] - static_cast<double>(parity) * f.values[k]);
        total += std::norm(f.values[k]);
    }
    return total > 0.0 ? std::sqrt(diff / total) : 0.0;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    if (!(a.spec == b.spec)) throw DimensionError("GridFunction +: grids differ");
    GridFunction out(a.spec);
    for (std::size_t k = 0; k < a.size(); ++k) out.values[k] = a.values[k] + b.values[k];
    return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    if (!(a.spec == b.spec)) throw DimensionError("GridFunction -: grids differ");
    GridFunction out(a.spec);
    for (std::size_t k = 0; k < a.size(); ++k) out.values[k] = a.values[k] - b.values[k];
    return out;
}

GridFunction operator*(cplx c, const GridFunction& a) {
    GridFunction out(a.spec);
    for (std::size_t k = 0; k < a.size(); ++k) out.values[k] = c * a.values[k];
    return out;
}

GridFunction multiply(const GridFunction& f, const std::function<cplx(const RVec&)>& m) {
    GridFunction out(f.spec);
    parallel_for(0, f.size(),
                 [&](std::size_t k) { out.values[k] = m(f.spec.point(k)) * f.values[k]; });
    return out;
}

// ---------------------------------------------------------------------------
// FFT plumbing

namespace {

class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }
    // In-place plan on n-dimensional N^n complex arrays.
    fftw_plan get(int n, int N, int direction) {
        std::lock_guard lock(mu_);
        const auto key = std::make_tuple(n, N, direction);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<int> dims(n, N);
        std::size_t total = 1;
        for (int a = 0; a < n; ++a) total *= N;
        fftw_complex* buf = fftw_alloc_complex(total);
        fftw_plan p = fftw_plan_dft(n, dims.data(), buf, buf, direction,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (!p) throw Error("fftw: plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    PlanCache() = default;
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void fft_inplace(std::vector<cplx>& data, int n, int N, int direction) {
    fftw_plan p = PlanCache::instance().get(n, N, direction);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

// Calls fn(line) for every 1-d line along `axis`, where line is a gathered
// copy that fn may modify and that is scattered back afterwards.
void for_each_line(GridFunction& f, int axis,
                   const std::function<void(std::vector<cplx>&, std::size_t base, std::size_t stride)>& fn) {
    const int N = f.spec.N;
    std::size_t stride = 1;
    for (int a = f.spec.n - 1; a > axis; --a) stride *= N;
    const std::size_t lines = f.size() / N;
    parallel_for(0, lines, [&](std::size_t l) {
        const std::size_t outer = l / stride, inner_off = l % stride;
        const std::size_t base = outer * stride * N + inner_off;
        std::vector<cplx> line(N);
        for (int j = 0; j < N; ++j) line[j] = f.values[base + j * stride];
        fn(line, base, stride);
        for (int j = 0; j < N; ++j) f.values[base + j * stride] = line[j];
    });
}

// Angular wavenumber of DFT bin m on a line of length L = N dx.
double wavenumber(int m, int N, double L) {
    const int s = m < N / 2 ? m : m - N;
    return 2.0 * pi * s / L;
}

}  // namespace

GridFunction fourier(const GridFunction& f, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("fourier: sign must be +1 or -1");
    const GridSpec& sp = f.spec;
    const int n = sp.n, N = sp.N;
    const double c = N / 2.0 - 0.5;
    // x_j xi_k = 2 pi (j - c)(k - c) / N, split into pre-twiddle, FFT, post-twiddle.
    std::vector<cplx> tw(N);
    for (int j = 0; j < N; ++j) tw[j] = std::polar(1.0, sign * 2.0 * pi * c * j / N);
    const cplx scale = std::pow(std::polar(1.0, -sign * 2.0 * pi * c * c / N), n) *
                       std::pow(sp.dx() / std::sqrt(2.0 * pi), n);

    GridFunction out(sp.dual(), f.values);
    auto twiddle = [&](std::vector<cplx>& v, cplx extra) {
        parallel_for(0, v.size(), [&](std::size_t k) {
            std::size_t r = k;
            cplx t = extra;
            for (int a = 0; a < n; ++a) {
                t *= tw[r % N];
                r /= N;
            }
            v[k] *= t;
        });
    };
    twiddle(out.values, 1.0);
    fft_inplace(out.values, n, N, sign > 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    twiddle(out.values, scale);
    return out;
}

GridFunction spectral_derivative(const GridFunction& f, int axis) {
    if (axis < 0 || axis >= f.spec.n) throw DimensionError("spectral_derivative: bad axis");
    const int N = f.spec.N;
    const double L = 2.0 * f.spec.R;
    GridFunction out = f;
    for_each_line(out, axis, [&](std::vector<cplx>& line, std::size_t, std::size_t) {
        fft_inplace(line, 1, N, FFTW_FORWARD);
        for (int m = 0; m < N; ++m)
            line[m] *= (m == N / 2) ? cplx{0.0} : I * wavenumber(m, N, L) / static_cast<double>(N);
        fft_inplace(line, 1, N, FFTW_BACKWARD);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Resampling

RMat ElementaryMap::matrix(int n) const {
    RMat M = RMat::Identity(n, n);
    switch (kind) {
        case Kind::Permutation:
            M.setZero();
            for (int r = 0; r < n; ++r) M(r, perm[r]) = 1.0;
            break;
        case Kind::Shear: M(i, j) = s; break;
        case Kind::Scale: M(i, i) = s; break;
    }
    return M;
}

std::vector<ElementaryMap> decompose_linear(const RMat& Q) {
    const int n = static_cast<int>(Q.rows());
    if (Q.cols() != n) throw DimensionError("decompose_linear: matrix must be square");
    Eigen::FullPivLU<RMat> lu(Q);
    if (!lu.isInvertible()) throw SingularMatrixError("decompose_linear: singular matrix");
    // Q = P^{-1} L U Qc^{-1}, U = diag(u) U1.
    RMat LU = lu.matrixLU();
    RMat L = RMat::Identity(n, n);
    L.triangularView<Eigen::StrictlyLower>() = LU.triangularView<Eigen::StrictlyLower>();
    RMat U = LU.triangularView<Eigen::Upper>();
    const RMat Pinv = lu.permutationP().inverse().toDenseMatrix().cast<double>();
    const RMat Qinv = lu.permutationQ().inverse().toDenseMatrix().cast<double>();

    auto perm_of = [n](const RMat& P) {
        ElementaryMap e{ElementaryMap::Kind::Permutation, std::vector<int>(n), 0, 0, 0.0};
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (P(r, c) == 1.0) e.perm[r] = c;
        return e;
    };
    auto is_identity = [n](const RMat& P) { return (P - RMat::Identity(n, n)).isZero(); };

    std::vector<ElementaryMap> out;
    if (!is_identity(Pinv)) out.push_back(perm_of(Pinv));
    for (int j = 0; j < n; ++j)
        for (int i = j + 1; i < n; ++i)
            if (L(i, j) != 0.0) out.push_back({ElementaryMap::Kind::Shear, {}, i, j, L(i, j)});
    for (int i = 0; i < n; ++i)
        if (U(i, i) != 1.0) out.push_back({ElementaryMap::Kind::Scale, {}, i, i, U(i, i)});
    for (int j = n - 1; j >= 0; --j)
        for (int i = 0; i < j; ++i) {
            const double u = U(i, j) / U(i, i);
            if (u != 0.0) out.push_back({ElementaryMap::Kind::Shear, {}, i, j, u});
        }
    if (!is_identity(Qinv)) out.push_back(perm_of(Qinv));
    return out;
}

namespace {

// Periodic bandlimited interpolation kernel on N nodes of period L with the
// Nyquist mode split symmetrically; equals the Kronecker delta on the nodes.
double dirichlet(double u, int N, double L) {
    const double a = pi * u / L;
    const double sa = std::sin(a);
    double core;
    if (std::abs(sa) < 1e-12) {
        const double q = std::round(u / L);
        core = (N - 1) * std::cos((N - 1) * pi * q) / std::cos(pi * q);
    } else {
        core = std::sin((N - 1) * a) / sa;
    }
    return (core + std::cos(N * a)) / N;
}

}  // namespace

cplx interpolate(const GridFunction& f, const RVec& x) {
    const GridSpec& sp = f.spec;
    if (x.size() != sp.n) throw DimensionError("interpolate: dimension mismatch");
    const double L = 2.0 * sp.R;
    std::vector<std::vector<double>> w(sp.n, std::vector<double>(sp.N));
    for (int a = 0; a < sp.n; ++a)
        for (int j = 0; j < sp.N; ++j) w[a][j] = dirichlet(x(a) - sp.coord(j), sp.N, L);
    cplx sum = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const auto idx = sp.multi_index(k);
        double wt = 1.0;
        for (int a = 0; a < sp.n; ++a) wt *= w[a][idx[a]];
        sum += wt * f.values[k];
    }
    return sum;
}

namespace {

GridFunction apply_permutation(const GridFunction& f, const std::vector<int>& perm) {
    GridFunction out(f.spec);
    const int n = f.spec.n;
    parallel_for(0, f.size(), [&](std::size_t k) {
        const auto idx = f.spec.multi_index(k);
        std::vector<int> src(n);
        for (int r = 0; r < n; ++r) src[r] = idx[perm[r]];
        out.values[k] = f.values[f.spec.flat_index(src)];
    });
    return out;
}

GridFunction apply_shear(const GridFunction& f, int i, int j, double s) {
    // g(x) = f(x + s x_j e_i): shift each line along axis i by s x_j.
    const GridSpec& sp = f.spec;
    const int N = sp.N;
    const double L = 2.0 * sp.R;
    std::size_t stride_j = 1;
    for (int a = sp.n - 1; a > j; --a) stride_j *= N;
    GridFunction out = f;
    for_each_line(out, i, [&](std::vector<cplx>& line, std::size_t base, std::size_t stride) {
        const int jj = static_cast<int>((base / stride_j) % N);
        const double shift = s * sp.coord(jj);
        fft_inplace(line, 1, N, FFTW_FORWARD);
        for (int m = 0; m < N; ++m) {
            const cplx ph = (m == N / 2) ? cplx(std::cos(pi * shift / sp.dx()))
                                         : std::polar(1.0, wavenumber(m, N, L) * shift);
            line[m] *= ph / static_cast<double>(N);
        }
        fft_inplace(line, 1, N, FFTW_BACKWARD);
        for (int k = 0; k < N; ++k)
            if (std::abs(sp.coord(k) + shift) > sp.R) line[k] = 0.0;
        (void)stride;
    });
    return out;
}

CMat scale_kernel(const GridSpec& sp, double s) {
    const int N = sp.N;
    const double L = 2.0 * sp.R;
    CMat K = CMat::Zero(N, N);
    for (int k = 0; k < N; ++k) {
        const double target = s * sp.coord(k);
        if (std::abs(target) > sp.R) continue;
        // The three angles are linear in j: advance them by rotation and
        // re-anchor every 32 entries.
        const double a0 = pi * (target - sp.coord(0)) / L, da = -pi * sp.dx() / L;
        const cplx r1 = std::polar(1.0, da), rm = std::polar(1.0, (N - 1) * da), rn = std::polar(1.0, N * da);
        cplx e1, em, en;
        for (int j = 0; j < N; ++j) {
            if (j % 32 == 0) {
                const double a = a0 + j * da;
                e1 = std::polar(1.0, a);
                em = std::polar(1.0, (N - 1) * a);
                en = std::polar(1.0, N * a);
            } else {
                e1 *= r1;
                em *= rm;
                en *= rn;
            }
            K(k, j) = std::abs(e1.imag()) < 1e-6 ? dirichlet(target - sp.coord(j), N, L)
                                                 : (em.imag() / e1.imag() + en.real()) / N;
        }
    }
    return K;
}

GridFunction apply_line_matrix(const GridFunction& f, int axis, const CMat& K) {
    const int N = f.spec.N;
    GridFunction out = f;
    for_each_line(out, axis, [&](std::vector<cplx>& line, std::size_t, std::size_t) {
        Eigen::Map<CVec> v(line.data(), N);
        const CVec r = K * v;
        v = r;
    });
    return out;
}

}  // namespace

GridFunction apply_elementary(const GridFunction& f, const ElementaryMap& e) {
    switch (e.kind) {
        case ElementaryMap::Kind::Permutation: return apply_permutation(f, e.perm);
        case ElementaryMap::Kind::Shear: return apply_shear(f, e.i, e.j, e.s);
        case ElementaryMap::Kind::Scale: return apply_line_matrix(f, e.i, scale_kernel(f.spec, e.s));
    }
    return f;
}

GridFunction chirp_sum(const GridFunction& f, int axis, double alpha) {
    if (axis < 0 || axis >= f.spec.n) throw DimensionError("chirp_sum: bad axis");
    const int N = f.spec.N, M = 2 * N;
    const double dx = f.spec.dx(), c = 0.5 * (N - 1), beta = alpha * dx * dx;
    // p q = (p^2 + q^2 - (q - p)^2) / 2 with p = j - c, q = k - c.
    std::vector<cplx> pre(N), kernel(M, 0.0);
    for (int j = 0; j < N; ++j) pre[j] = std::polar(1.0, -0.5 * beta * (j - c) * (j - c));
    for (int m = 0; m < N; ++m) {
        kernel[m] = std::polar(1.0, 0.5 * beta * double(m) * m);
        if (m > 0) kernel[M - m] = kernel[m];
    }
    fft_inplace(kernel, 1, M, FFTW_FORWARD);
    GridFunction out = f;
    for_each_line(out, axis, [&](std::vector<cplx>& line, std::size_t, std::size_t) {
        std::vector<cplx> buf(M, 0.0);
        for (int j = 0; j < N; ++j) buf[j] = line[j] * pre[j];
        fft_inplace(buf, 1, M, FFTW_FORWARD);
        for (int m = 0; m < M; ++m) buf[m] *= kernel[m];
        fft_inplace(buf, 1, M, FFTW_BACKWARD);
        for (int k = 0; k < N; ++k) line[k] = buf[k] * pre[k] * (dx / M);
    });
    return out;
}

GridFunction pad_double(const GridFunction& f) {
    const GridSpec big = GridSpec::make(f.spec.n, 2.0 * f.spec.R, 2 * f.spec.N);
    const int off = f.spec.N / 2;
    GridFunction g(big);
    for (std::size_t k = 0; k < f.size(); ++k) {
        auto idx = f.spec.multi_index(k);
        for (auto& j : idx) j += off;
        g.values[big.flat_index(idx)] = f.values[k];
    }
    return g;
}

GridFunction crop_to(const GridFunction& g, const GridSpec& spec) {
    if (g.spec.n != spec.n || g.spec.N < spec.N || std::abs(g.spec.dx() - spec.dx()) > 1e-12 * spec.dx() ||
        (g.spec.N - spec.N) % 2 != 0)
        throw DimensionError("crop_to: grids are not nested");
    const int off = (g.spec.N - spec.N) / 2;
    GridFunction out(spec);
    for (std::size_t k = 0; k < out.size(); ++k) {
        auto idx = spec.multi_index(k);
        for (auto& j : idx) j += off;
        out.values[k] = g.values[g.spec.flat_index(idx)];
    }
    return out;
}

Resampler::Resampler(const GridSpec& spec, const RMat& Q, bool pad)
    : spec_(spec), work_(pad ? GridSpec::make(spec.n, 2.0 * spec.R, 2 * spec.N) : spec) {
    if (Q.rows() != spec.n) throw DimensionError("resample: dimension mismatch");
    maps_ = decompose_linear(Q);
    for (const auto& e : maps_)
        kernels_.push_back(e.kind == ElementaryMap::Kind::Scale ? scale_kernel(work_, e.s) : CMat());
}

GridFunction Resampler::operator()(const GridFunction& f) const {
    if (!(f.spec == spec_)) throw DimensionError("Resampler: grid mismatch");
    GridFunction g = work_ == spec_ ? f : pad_double(f);
    // f(F1 F2 x) = T_{F2}(T_{F1} f)(x): apply factors left to right.
    for (std::size_t k = 0; k < maps_.size(); ++k)
        g = maps_[k].kind == ElementaryMap::Kind::Scale ? apply_line_matrix(g, maps_[k].i, kernels_[k])
                                                        : apply_elementary(g, maps_[k]);
    return work_ == spec_ ? g : crop_to(g, spec_);
}

GridFunction resample(const GridFunction& f, const RMat& Q, bool pad) { return Resampler(f.spec, Q, pad)(f); }

}  // namespace weil
