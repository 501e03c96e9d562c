#include "weilkit/symplectic.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "weilkit/errors.hpp"

namespace weil {

namespace {

template <class Mat>
Mat symmetrize_impl(const Mat& X, double tol) {
    if (X.rows() != X.cols()) throw DimensionError("symmetrize: matrix is not square");
    const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
    const double asym = (X - X.transpose()).cwiseAbs().maxCoeff() / 2;
    if (asym > tol * scale)
        throw SymmetryError("matrix is not symmetric (antisymmetric part " + std::to_string(asym) +
                            ")");
    return (X + X.transpose()) / 2;
}

void require_square(const RMat& M, int n, const char* what) {
    if (M.rows() != n || M.cols() != n)
        throw DimensionError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                             std::to_string(n) + " block");
}

}  // namespace

RMat symmetrize(const RMat& X, double tol) { return symmetrize_impl(X, tol); }
CMat symmetrize(const CMat& X, double tol) { return symmetrize_impl(X, tol); }

RMat symplectic_form(int n) {
    RMat J = RMat::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = RMat::Identity(n, n);
    J.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
    return J;
}

SymplecticCheck is_symplectic(const RMat& M, double tol) {
    if (M.rows() != M.cols() || M.rows() % 2 != 0 || M.rows() == 0)
        throw DimensionError("is_symplectic: matrix must be square with even dimension");
    const RMat J = symplectic_form(static_cast<int>(M.rows() / 2));
    const double residual = (M.transpose() * J * M - J).norm();
    return {residual <= tol, residual};
}

SymplecticMatrix SymplecticMatrix::from_matrix(const RMat& M, double tol) {
    const auto check = is_symplectic(M);
    const double scale = std::max(1.0, M.squaredNorm());
    if (check.residual > tol * scale)
        throw NotSymplecticError("matrix is not symplectic (residual " +
                                 std::to_string(check.residual) + ")");
    const double det = M.determinant();
    if (std::abs(det - 1.0) > 1e-8 * scale)
        throw NotSymplecticError("symplectic matrix must have unit determinant");
    return SymplecticMatrix(M);
}

SymplecticMatrix SymplecticMatrix::from_blocks(const RMat& A, const RMat& B, const RMat& C,
                                               const RMat& D, double tol) {
    const int n = static_cast<int>(A.rows());
    require_square(A, n, "A");
    require_square(B, n, "B");
    require_square(C, n, "C");
    require_square(D, n, "D");
    RMat M(2 * n, 2 * n);
    M << A, B, C, D;
    return from_matrix(M, tol);
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
    if (n < 1) throw DimensionError("identity: n must be positive");
    return SymplecticMatrix(RMat::Identity(2 * n, 2 * n));
}

SymplecticMatrix compose(const SymplecticMatrix& lhs, const SymplecticMatrix& rhs) {
    if (lhs.n() != rhs.n()) throw DimensionError("compose: dimension mismatch");
    return SymplecticMatrix(lhs.m_ * rhs.m_);
}

SymplecticMatrix inverse(const SymplecticMatrix& m) {
    const RMat J = symplectic_form(m.n());
    return SymplecticMatrix(-J * m.m_.transpose() * J);
}

SymplecticMatrix generator_shear(const RMat& B) {
    const RMat Bs = symmetrize(B);
    const int n = static_cast<int>(Bs.rows());
    return SymplecticMatrix::from_blocks(RMat::Identity(n, n), Bs, RMat::Zero(n, n),
                                         RMat::Identity(n, n));
}

SymplecticMatrix generator_fourier(int n) {
    if (n < 1) throw DimensionError("generator_fourier: n must be positive");
    return SymplecticMatrix::from_matrix(symplectic_form(n));
}

SymplecticMatrix generator_gl(const RMat& A) {
    if (A.rows() != A.cols()) throw DimensionError("generator_gl: A must be square");
    const int n = static_cast<int>(A.rows());
    Eigen::FullPivLU<RMat> lu(A);
    if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-14 * std::pow(A.norm(), n))
        throw SingularMatrixError("generator_gl: A is singular");
    const RMat Dblock = lu.inverse().transpose();
    return SymplecticMatrix::from_blocks(A, RMat::Zero(n, n), RMat::Zero(n, n), Dblock);
}

SymplecticMatrix rotation(int n, double theta) {
    const RMat E = RMat::Identity(n, n);
    const double c = std::cos(theta), s = std::sin(theta);
    return SymplecticMatrix::from_blocks(c * E, -s * E, s * E, c * E);
}

QuadraticHamiltonian::QuadraticHamiltonian(const RMat& a, const RMat& b, const RMat& c)
    : a_(symmetrize(a)), b_(b), c_(symmetrize(c)) {
    const auto n = a_.rows();
    if (b_.rows() != n || b_.cols() != n || c_.rows() != n)
        throw DimensionError("QuadraticHamiltonian: blocks must share dimension");
    if (n < 1) throw DimensionError("QuadraticHamiltonian: n must be positive");
}

QuadraticHamiltonian QuadraticHamiltonian::harmonic_oscillator(int n) {
    return {RMat::Identity(n, n), RMat::Zero(n, n), RMat::Identity(n, n)};
}

QuadraticHamiltonian QuadraticHamiltonian::free_particle(int n) {
    return {RMat::Zero(n, n), RMat::Zero(n, n), RMat::Identity(n, n)};
}

RMat generator_matrix(const QuadraticHamiltonian& H) {
    const int n = H.n();
    RMat X(2 * n, 2 * n);
    X << H.b(), -H.a(), H.c(), -H.b().transpose();
    return X;
}

SymplecticMatrix hamiltonian_flow(const QuadraticHamiltonian& H, double t) {
    if (!std::isfinite(t)) throw DomainError("hamiltonian_flow: t must be finite");
    const RMat tX = t * generator_matrix(H);
    return SymplecticMatrix::from_matrix(tX.exp(), 1e-8);
}

HeisenbergVector heisenberg_transform(const SymplecticMatrix& M, const HeisenbergVector& h) {
    const int n = M.n();
    if (h.v.size() != n || h.w.size() != n)
        throw DimensionError("heisenberg_transform: vector size mismatch");
    RVec vw(2 * n);
    vw << h.v, h.w;
    const RVec out = M.matrix() * vw;
    return {out.head(n), out.tail(n)};
}

std::pair<CVec, CVec> heisenberg_transform(const SymplecticMatrix& M, const CVec& v,
                                           const CVec& w) {
    const int n = M.n();
    if (v.size() != n || w.size() != n)
        throw DimensionError("heisenberg_transform: vector size mismatch");
    CVec vw(2 * n);
    vw << v, w;
    const CVec out = M.matrix().cast<cplx>() * vw;
    return {out.head(n), out.tail(n)};
}

}  // namespace weil
