#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

#include "weilkit/gaussian.hpp"
#include "weilkit/grid.hpp"
#include "weilkit/siegel.hpp"

namespace weil {

using TransformSource = std::variant<GridFunction, GaussianExpansion>;

enum class Parity { Even, Odd, Mixed };

/// Transforms u(Z) = int conj(psi) psi_Z dx and u_l(Z) = int conj(psi) x_l psi_Z dx
/// of a fixed source, with a thread-safe cache keyed by Z.
class TransformSampler {
public:
    explicit TransformSampler(TransformSource source);

    int n() const noexcept { return n_; }
    Parity parity() const noexcept { return parity_; }
    const TransformSource& source() const noexcept { return *source_; }
    /// Grid sources whose boundary decay ratio is >= 1e-6.
    bool truncation_warning() const noexcept { return truncation_warning_; }
    double source_norm() const noexcept { return norm_; }
    cplx source_at_origin() const;

    /// Z may be any complex symmetric matrix for which the integral converges
    /// (Im Z >= 0 for Schwartz sources).
    cplx even(const CMat& Z) const;
    CVec odd(const CMat& Z) const;

private:
    std::shared_ptr<const TransformSource> source_;
    int n_;
    Parity parity_;
    bool truncation_warning_ = false;
    double norm_ = 0.0;

    struct Cache {
        std::mutex mu;
        std::map<std::vector<double>, cplx> even;
        std::map<std::vector<double>, CVec> odd;
    };
    std::shared_ptr<Cache> cache_;
};

struct TransformResult {
    cplx value;
    bool truncation_warning;
};
struct TransformOddResult {
    CVec value;
    bool truncation_warning;
};

TransformResult transform_point(const TransformSampler& u, const SiegelPoint& Z);
TransformOddResult transform_odd(const TransformSampler& u, const SiegelPoint& Z);
TransformResult boundary_transform(const TransformSampler& u, const BoundaryChartPoint& a);
TransformOddResult boundary_transform_odd(const TransformSampler& u, const BoundaryChartPoint& a);

/// lim_{y -> 0+} u(a + i y E) by polynomial extrapolation from y = 0.04, 0.02, 0.01, 0.005.
cplx boundary_limit(const TransformSampler& u, const BoundaryChartPoint& a);

/// psi -> U psi: closed form for expansions, grid evolution otherwise.
TransformSource act(const MetaplecticElement& m, const TransformSource& psi);

/// |u_{m^{-1} psi}(Z) - eps(Z)^{-1} u_psi(g Z)| / (|psi| |psi_Z|).
double equivariance_check_even(const MetaplecticElement& m, const TransformSource& psi,
                               const SiegelPoint& Z);
/// |(CZ + D) v(Z) - eps(Z)^{-1} u(g Z)| / (|psi| |psi_Z|) where v, u are the odd
/// transforms of m^{-1} psi and psi.
double equivariance_check_odd(const MetaplecticElement& m, const TransformSource& psi,
                              const SiegelPoint& Z);

using ScalarField = std::function<cplx(const CMat&)>;
using VectorField = std::function<CVec(const CMat&)>;

ScalarField even_field(const TransformSampler& u);
VectorField odd_field(const TransformSampler& u);

/// d/dZ_jk as a direction in symmetric matrices: (e_j e_k^T + e_k e_j^T)/2, so
/// the off-diagonal derivative is half the joint partial.
CMat z_direction(int n, int j, int k);

/// d_a d_b f at Z with steps along directions Da, Db (central 4-point stencil).
cplx mixed_second_derivative(const ScalarField& f, const CMat& Z, const CMat& Da,
                             const CMat& Db, double h);
/// d_a f at Z (central difference), direction Da may be complex.
cplx first_derivative(const ScalarField& f, const CMat& Z, const CMat& Da, double h);

/// Richardson-extrapolated residual together with the raw residuals at
/// step and step/2 (their ratio is ~4 for a second-order stencil).
struct PdeResidual {
    double residual;
    double raw_step;
    double raw_half;
    double ratio;
};

/// d_{jl} d_{km} u = d_{jm} d_{kl} u over all index quadruples.
PdeResidual pde_residual_even(const ScalarField& u, const SiegelPoint& Z, double step);
/// d_{jk} u_l = d_{jl} u_k over all index triples.
PdeResidual pde_residual_odd(const VectorField& u, const SiegelPoint& Z, double step);
/// Same systems in the real chart a (no margin requirement).
PdeResidual pde_residual_boundary_even(const ScalarField& u, const BoundaryChartPoint& a,
                                       double step);
PdeResidual pde_residual_boundary_odd(const VectorField& u, const BoundaryChartPoint& a,
                                      double step);

/// max over entries of |du/dRe Z_jk - (1/i) du/dIm Z_jk| (Richardson-extrapolated).
double cauchy_riemann_residual(const ScalarField& u, const SiegelPoint& Z, double step);

struct GrowthRow {
    CMat Z;
    double value;
    double bound;
};

struct GrowthReport {
    double C;
    int M;
    int N;
    bool respected;
    std::vector<GrowthRow> rows;
};

/// |u(Z)| against C (1 + |Z|)^M (1 + |det Im Z|^{-1})^N along a path.
GrowthReport growth_probe(const ScalarField& u, const std::vector<SiegelPoint>& path, double C,
                          int M, int N);
/// Smallest (M + N, then M) with M, N <= max_exponent for which C fitted on the
/// first half of the path (times `margin`) bounds the whole path.
std::optional<GrowthReport> fit_growth(const ScalarField& u, const std::vector<SiegelPoint>& path,
                                       int max_exponent = 4, double margin = 2.0);

struct SiegelNormOptions {
    double y0 = 1e-3;  ///< largest inner cutoff; y0/2, y0/4, y0/8 are used too
    double tol = 1e-11;
};

struct SiegelNormResult {
    double value;                   ///< finite part of the regularized integral
    std::vector<double> y0;         ///< cutoffs
    std::vector<double> partial;    ///< I(y0) for each cutoff
    std::vector<double> estimates;  ///< three-point extrapolations from consecutive cutoffs
};

/// n = 1: finite part of int |u(x + iy)|^2 y^{-3/2} dx dy with the logarithmic
/// x-divergence removed by the y-independent counterterm 2 pi |psi(0)|^2 / sqrt(x^2 + 1)
/// and the y0^{-1/2} divergence removed by extrapolation in y0. Throws TailError
/// when successive extrapolations disagree by more than 1e-3 (relative).
SiegelNormResult siegel_norm_n1(const TransformSampler& u, const SiegelNormOptions& opt = {});

}  // namespace weil
