#pragma once

#include <functional>
#include <vector>

#include "weilkit/gaussian.hpp"
#include "weilkit/symplectic.hpp"
#include "weilkit/types.hpp"

namespace weil {

/// Uniform cell-centered box grid: N points per axis on [-R, R], at
/// x_j = -R + (j + 1/2) 2R/N. Samples are stored row-major (last axis fastest).
struct GridSpec {
    int n = 1;
    double R = 12.0;
    int N = 1024;

    /// Validates 1 <= n <= 3, R > 0, N even and positive.
    static GridSpec make(int n, double R, int N);

    double dx() const noexcept { return 2.0 * R / N; }
    double coord(int j) const noexcept { return -R + (j + 0.5) * dx(); }
    std::size_t size() const noexcept;
    /// Cell volume dx^n.
    double cell() const noexcept;
    RVec point(std::size_t flat) const;
    std::vector<int> multi_index(std::size_t flat) const;
    std::size_t flat_index(const std::vector<int>& idx) const;
    /// Grid reached by the continuum Fourier transform: dxi = pi/R, so R' = pi N / (2R).
    GridSpec dual() const;
    bool operator==(const GridSpec& o) const = default;
};

/// n=1: (12, 1024), n=2: (8, 256), n=3: (6, 64).
GridSpec default_grid(int n);

struct GridFunction {
    GridSpec spec;
    std::vector<cplx> values;

    GridFunction() = default;
    explicit GridFunction(const GridSpec& s) : spec(s), values(s.size(), cplx{0.0}) {}
    GridFunction(const GridSpec& s, std::vector<cplx> v);

    int n() const noexcept { return spec.n; }
    std::size_t size() const noexcept { return values.size(); }
};

GridFunction sample(const GridSpec& spec, const std::function<cplx(const RVec&)>& f);
GridFunction sample_gaussian(const GaussianState& s, const GridSpec& spec);
GridFunction sample_expansion(const GaussianExpansion& e, const GridSpec& spec);
/// Normalized Hermite function h_alpha by the three-term recurrence; |alpha| <= 12.
GridFunction hermite_state(const std::vector<int>& alpha, const GridSpec& spec);

double norm(const GridFunction& f);
/// sum conj(f) g dx^n.
cplx inner(const GridFunction& f, const GridFunction& g);
/// |f - g| / |g| in the discrete L2 norm.
double relative_error(const GridFunction& f, const GridFunction& g);
/// max |f| over the outermost shell of cells divided by max |f|.
double boundary_decay(const GridFunction& f);
/// |f(-x) - parity f(x)| / |f| with parity = +1 or -1.
double parity_residual(const GridFunction& f, int parity);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(cplx c, const GridFunction& a);
/// Pointwise multiplication by a function of x.
GridFunction multiply(const GridFunction& f, const std::function<cplx(const RVec&)>& m);

/// Bandlimited (tensor Dirichlet kernel) interpolation at an arbitrary point.
cplx interpolate(const GridFunction& f, const RVec& x);

/// Unitary continuum-normalized transform (2 pi)^{-n/2} int e^{-sign i x xi} f(x) dx
/// sampled on spec.dual(). sign = -1 inverts sign = +1.
GridFunction fourier(const GridFunction& f, int sign);

/// d/dx_axis via the periodic spectral derivative (Nyquist mode dropped).
GridFunction spectral_derivative(const GridFunction& f, int axis);

/// Elementary coordinate changes used by resample.
struct ElementaryMap {
    enum class Kind { Permutation, Shear, Scale };
    Kind kind;
    std::vector<int> perm;  ///< (Px)_i = x_{perm[i]}
    int i = 0, j = 0;       ///< shear: x_i -> x_i + s x_j; scale: x_i -> s x_i
    double s = 0.0;
    RMat matrix(int n) const;
};

/// Q = F_1 F_2 ... F_k with every factor elementary.
std::vector<ElementaryMap> decompose_linear(const RMat& Q);

/// Precomputed f -> f(Q x) on a fixed grid, reusable across many inputs.
class Resampler {
public:
    /// With `pad`, stages run on the doubled grid and the result is cropped.
    Resampler(const GridSpec& spec, const RMat& Q, bool pad = true);
    GridFunction operator()(const GridFunction& f) const;

private:
    GridSpec spec_;
    GridSpec work_;  ///< grid holding the intermediate stages
    std::vector<ElementaryMap> maps_;
    std::vector<CMat> kernels_;  ///< dense interpolation matrix per Scale factor
};

/// g(x) = f(Q x) by bandlimited interpolation. The elementary stages run on a
/// grid padded to twice the width, so intermediate images may leave the box;
/// anything needing points outside the padded box is set to zero.
GridFunction resample(const GridFunction& f, const RMat& Q, bool pad = true);
/// out(x_k) = dx sum_j f(x_j) exp(-i alpha x_j x_k) along one axis, by chirp
/// convolution in O(N log N).
GridFunction chirp_sum(const GridFunction& f, int axis, double alpha);

/// Zero-extension onto (2R, 2N) and its inverse (central block).
GridFunction pad_double(const GridFunction& f);
GridFunction crop_to(const GridFunction& g, const GridSpec& spec);
GridFunction apply_elementary(const GridFunction& f, const ElementaryMap& e);

}  // namespace weil
