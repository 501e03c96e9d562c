#pragma once

#include <span>
#include <vector>

#include "weilkit/symplectic.hpp"
#include "weilkit/types.hpp"

namespace weil {

/// Complex symmetric Z with Im Z positive definite.
class SiegelPoint {
public:
    /// Symmetrizes Z (asymmetry above 1e-8 throws SymmetryError) and checks
    /// that the smallest eigenvalue of Im Z exceeds 1e-12 (DomainError).
    static SiegelPoint make(const CMat& Z);
    static SiegelPoint make(const RMat& re, const RMat& im);
    /// iE, the point fixed by U(n).
    static SiegelPoint base_point(int n);

    int n() const noexcept { return static_cast<int>(z_.rows()); }
    const CMat& Z() const noexcept { return z_; }
    double min_imag_eigenvalue() const noexcept { return min_eig_; }

private:
    SiegelPoint(CMat z, double min_eig) : z_(std::move(z)), min_eig_(min_eig) {}
    CMat z_;
    double min_eig_;
};

/// Real symmetric a: the chart of boundary Gaussians exp((i/2) x^T a x).
class BoundaryChartPoint {
public:
    static BoundaryChartPoint make(const RMat& a);
    int n() const noexcept { return static_cast<int>(a_.rows()); }
    const RMat& a() const noexcept { return a_; }

private:
    explicit BoundaryChartPoint(RMat a) : a_(std::move(a)) {}
    RMat a_;
};

double min_symmetric_eigenvalue(const RMat& S);

/// det(C Z + D) for an arbitrary complex square Z.
cplx cocycle_det(const SymplecticMatrix& g, const CMat& Z);

/// (A Z + B)(C Z + D)^{-1} on an arbitrary complex symmetric Z (no domain
/// check); throws NearSingularCocycleError when cond(CZ + D) > 1e12.
CMat fractional_linear(const SymplecticMatrix& g, const CMat& Z);

/// Z -> (A Z + B)(C Z + D)^{-1}.
SiegelPoint siegel_action(const SymplecticMatrix& g, const SiegelPoint& Z);

/// A symplectic matrix together with a chosen square root eps0 of
/// det(C iE + D). The pair determines a continuous branch of
/// sqrt(det(C Z + D)) on the whole half-plane.
class MetaplecticElement {
public:
    /// Validates eps0^2 = det(C iE + D) to relative 1e-10.
    static MetaplecticElement make(const SymplecticMatrix& g, cplx eps0);
    /// Picks the square root of det(C iE + D) nearest to `hint`.
    static MetaplecticElement lift(const SymplecticMatrix& g, cplx hint = 1.0);

    int n() const noexcept { return g_.n(); }
    const SymplecticMatrix& g() const noexcept { return g_; }
    cplx eps0() const noexcept { return eps0_; }

private:
    MetaplecticElement(SymplecticMatrix g, cplx eps0) : g_(std::move(g)), eps0_(eps0) {}
    SymplecticMatrix g_;
    cplx eps0_;
};

/// eps(Z): the branch of sqrt(det(C Z + D)) continued along the straight
/// segment from iE to Z, starting from eps0.
cplx branch_continue(const MetaplecticElement& m, const CMat& Z);
cplx branch_continue(const MetaplecticElement& m, const SiegelPoint& Z);
/// Same, continued along the polygon iE -> waypoints[0] -> ... -> Z.
cplx branch_continue_path(const MetaplecticElement& m, std::span<const CMat> waypoints,
                          const CMat& Z);

MetaplecticElement mp_identity(int n);
/// The nontrivial central element (I, -1).
MetaplecticElement mp_center(int n);
MetaplecticElement mp_mul(const MetaplecticElement& m1, const MetaplecticElement& m2);
MetaplecticElement mp_inv(const MetaplecticElement& m);

/// Shear lift with eps0 = +1.
MetaplecticElement mp_shear(const RMat& B);
/// Fourier lift with eps0 = exp(-i n pi/4), the continuation of the
/// oscillator flow to time -pi/2.
MetaplecticElement mp_fourier(int n);
/// GL lift; eps0 = sqrt(det A^{-T}) with the +i root when det A < 0.
MetaplecticElement mp_gl(const RMat& A);
/// Oscillator flow at time theta with eps0 = exp(i n theta/2).
MetaplecticElement mp_rotation(int n, double theta);
/// Lift of hamiltonian_flow(H, t) continuous in t from (I, +1).
MetaplecticElement mp_flow(const QuadraticHamiltonian& H, double t);

/// Boundary limit of 1/sqrt(det(C Z + D)) at Z = a.
struct MaslovPhase {
    double modulus;       ///< |det(C a + D)|^{-1/2}
    int k;                ///< limit phase = k pi/2, k in {0, 1, 2, 3}
    double snap_residual; ///< |arg(limit) - k pi/2|
    cplx limit;           ///< extrapolated value of 1/eps(a + i0)
};

/// Evaluates 1/eps(a + i y E) at y = 1e-2, 1e-3, 1e-4 and extrapolates to
/// y = 0. Throws BoundaryCausticError when |det(C a + D)| <= 1e-8.
MaslovPhase maslov_boundary_phase(const MetaplecticElement& m, const BoundaryChartPoint& a);

}  // namespace weil
