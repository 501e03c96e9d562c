#pragma once

#include "weilkit/types.hpp"

namespace weil {

/// Result of a symplecticity test: residual = |M^T J M - J|_F.
struct SymplecticCheck {
    bool ok;
    double residual;
};

/// J = [[0, E], [-E, 0]] for phase-space vectors ordered as (p; x).
RMat symplectic_form(int n);

/// Throws DimensionError when M is not square of even size.
SymplecticCheck is_symplectic(const RMat& M, double tol = 1e-10);

/// A real 2n x 2n matrix [[A, B], [C, D]] preserving the standard symplectic
/// form. It acts on columns (p; x): p' = A q + B y, x' = C q + D y.
class SymplecticMatrix {
public:
    /// Validates M^T J M = J with tolerance `tol` relative to max(1, |M|_F^2)
    /// and det M = 1 to 1e-8 (relative); throws NotSymplecticError otherwise.
    static SymplecticMatrix from_matrix(const RMat& M, double tol = 1e-10);
    static SymplecticMatrix from_blocks(const RMat& A, const RMat& B, const RMat& C,
                                        const RMat& D, double tol = 1e-10);
    static SymplecticMatrix identity(int n);

    int n() const noexcept { return static_cast<int>(m_.rows() / 2); }
    const RMat& matrix() const noexcept { return m_; }

    RMat A() const { return m_.topLeftCorner(n(), n()); }
    RMat B() const { return m_.topRightCorner(n(), n()); }
    RMat C() const { return m_.bottomLeftCorner(n(), n()); }
    RMat D() const { return m_.bottomRightCorner(n(), n()); }

    friend SymplecticMatrix compose(const SymplecticMatrix& lhs, const SymplecticMatrix& rhs);
    friend SymplecticMatrix inverse(const SymplecticMatrix& m);

private:
    explicit SymplecticMatrix(RMat m) : m_(std::move(m)) {}
    RMat m_;
};

/// lhs * rhs.
SymplecticMatrix compose(const SymplecticMatrix& lhs, const SymplecticMatrix& rhs);
/// M^{-1} = -J M^T J.
SymplecticMatrix inverse(const SymplecticMatrix& m);

/// [[E, B], [0, E]] for symmetric B: multiplication by exp((i/2) x^T B x).
SymplecticMatrix generator_shear(const RMat& B);
/// [[0, E], [-E, 0]]: the Fourier transform up to a constant.
SymplecticMatrix generator_fourier(int n);
/// [[A, 0], [0, (A^T)^{-1}]]; throws SingularMatrixError for singular A.
SymplecticMatrix generator_gl(const RMat& A);
/// Harmonic-oscillator flow at time theta: [[cos, -sin], [sin, cos]] blockwise.
SymplecticMatrix rotation(int n, double theta);

/// Quadratic Hamiltonian H(x, p) = 1/2 x^T a x - x^T b p + 1/2 p^T c p.
///
/// Its Schroedinger operator (with p = -i d/dx) is
///   1/2 x^T a x - 1/2 div(c grad) + i sum b_jk x_j d_k + (i/2) tr b,
/// i.e. the b-part is exactly the one of the quadratic Schroedinger
/// equation, and the generator of the evolution is
///   -i/2 x^T a x + sum b_jk x_j d_k + i/2 div(c grad) + 1/2 tr b.
class QuadraticHamiltonian {
public:
    /// a and c are symmetrized; an antisymmetric part above 1e-8 throws.
    QuadraticHamiltonian(const RMat& a, const RMat& b, const RMat& c);

    int n() const noexcept { return static_cast<int>(a_.rows()); }
    const RMat& a() const noexcept { return a_; }
    const RMat& b() const noexcept { return b_; }
    const RMat& c() const noexcept { return c_; }

    static QuadraticHamiltonian harmonic_oscillator(int n);
    static QuadraticHamiltonian free_particle(int n);

private:
    RMat a_, b_, c_;
};

/// Infinitesimal generator X on Heisenberg coefficients (v; w):
/// [L, v.x + w.i d] = (v'.x + w'.i d) with (v'; w') = X (v; w), where L is
/// the evolution generator above. X = [[b, -a], [c, -b^T]].
RMat generator_matrix(const QuadraticHamiltonian& H);

/// exp(t X), via Pade scaling-and-squaring.
SymplecticMatrix hamiltonian_flow(const QuadraticHamiltonian& H, double t);

/// Coefficients of the first-order operator sum_j (v_j x_j + w_j i d/dx_j).
struct HeisenbergVector {
    RVec v;
    RVec w;
};

/// (v'; w') = M (v; w).
HeisenbergVector heisenberg_transform(const SymplecticMatrix& M, const HeisenbergVector& h);
/// Complex-coefficient variant used for annihilation systems.
std::pair<CVec, CVec> heisenberg_transform(const SymplecticMatrix& M, const CVec& v,
                                           const CVec& w);

}  // namespace weil
