#include "weilkit/siegel.hpp"

#include <array>
#include <cmath>
#include <string>

#include "weilkit/branch.hpp"
#include "weilkit/errors.hpp"

namespace weil {

double min_symmetric_eigenvalue(const RMat& S) {
    Eigen::SelfAdjointEigenSolver<RMat> es(S, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

SiegelPoint SiegelPoint::make(const CMat& Z) {
    if (Z.rows() != Z.cols() || Z.rows() == 0)
        throw DimensionError("SiegelPoint: Z must be square and nonempty");
    CMat zs = symmetrize(Z);
    const double lmin = min_symmetric_eigenvalue(zs.imag());
    if (!(lmin > 1e-12))
        throw DomainError("SiegelPoint: Im Z is not positive definite (min eigenvalue " +
                          std::to_string(lmin) + ")");
    return SiegelPoint(std::move(zs), lmin);
}

SiegelPoint SiegelPoint::make(const RMat& re, const RMat& im) {
    if (re.rows() != im.rows() || re.cols() != im.cols())
        throw DimensionError("SiegelPoint: real and imaginary parts differ in shape");
    CMat Z(re.rows(), re.cols());
    Z.real() = re;
    Z.imag() = im;
    return make(Z);
}

SiegelPoint SiegelPoint::base_point(int n) {
    return make(CMat(I * CMat::Identity(n, n)));
}

BoundaryChartPoint BoundaryChartPoint::make(const RMat& a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw DimensionError("BoundaryChartPoint: a must be square and nonempty");
    return BoundaryChartPoint(symmetrize(a));
}

cplx cocycle_det(const SymplecticMatrix& g, const CMat& Z) {
    if (Z.rows() != g.n()) throw DimensionError("cocycle_det: dimension mismatch");
    return (g.C().cast<cplx>() * Z + g.D().cast<cplx>()).determinant();
}

CMat fractional_linear(const SymplecticMatrix& g, const CMat& Z) {
    if (Z.rows() != g.n()) throw DimensionError("siegel_action: dimension mismatch");
    const CMat num = g.A().cast<cplx>() * Z + g.B().cast<cplx>();
    const CMat den = g.C().cast<cplx>() * Z + g.D().cast<cplx>();
    Eigen::JacobiSVD<CMat> svd(den);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || sv(0) / smin > 1e12)
        throw NearSingularCocycleError("siegel_action: CZ + D is numerically singular");
    // W = num den^{-1}  <=>  den^T W^T = num^T.
    const CMat W = den.transpose().partialPivLu().solve(num.transpose()).transpose();
    return (W + W.transpose()) / 2.0;
}

SiegelPoint siegel_action(const SymplecticMatrix& g, const SiegelPoint& Z) {
    return SiegelPoint::make(fractional_linear(g, Z.Z()));
}

MetaplecticElement MetaplecticElement::make(const SymplecticMatrix& g, cplx eps0) {
    const cplx det = cocycle_det(g, CMat(I * CMat::Identity(g.n(), g.n())));
    if (eps0 == cplx{0.0}) throw DomainError("MetaplecticElement: eps0 must be nonzero");
    if (std::abs(eps0 * eps0 - det) > 1e-10 * std::abs(det))
        throw DomainError("MetaplecticElement: eps0^2 != det(C iE + D)");
    return MetaplecticElement(g, eps0);
}

MetaplecticElement MetaplecticElement::lift(const SymplecticMatrix& g, cplx hint) {
    const cplx det = cocycle_det(g, CMat(I * CMat::Identity(g.n(), g.n())));
    cplx root = std::sqrt(det);
    if (std::abs(-root - hint) < std::abs(root - hint)) root = -root;
    return MetaplecticElement(g, root);
}

namespace {

CMat base(int n) { return I * CMat::Identity(n, n); }

}  // namespace

cplx branch_continue(const MetaplecticElement& m, const CMat& Z) {
    const CMat start = base(m.n());
    const CMat delta = Z - start;
    const CMat Cc = m.g().C().cast<cplx>();
    const CMat Dc = m.g().D().cast<cplx>();
    return continue_sqrt([&](double s) { return (Cc * (start + s * delta) + Dc).determinant(); },
                         m.eps0());
}

cplx branch_continue(const MetaplecticElement& m, const SiegelPoint& Z) {
    return branch_continue(m, Z.Z());
}

cplx branch_continue_path(const MetaplecticElement& m, std::span<const CMat> waypoints,
                          const CMat& Z) {
    std::vector<CMat> nodes;
    nodes.push_back(base(m.n()));
    nodes.insert(nodes.end(), waypoints.begin(), waypoints.end());
    nodes.push_back(Z);
    const CMat Cc = m.g().C().cast<cplx>();
    const CMat Dc = m.g().D().cast<cplx>();
    return continue_sqrt_legs(
        [&](int leg, double s) {
            const CMat P = nodes[leg] + s * (nodes[leg + 1] - nodes[leg]);
            return (Cc * P + Dc).determinant();
        },
        static_cast<int>(nodes.size()) - 1, m.eps0());
}

MetaplecticElement mp_identity(int n) {
    return MetaplecticElement::make(SymplecticMatrix::identity(n), 1.0);
}

MetaplecticElement mp_center(int n) {
    return MetaplecticElement::make(SymplecticMatrix::identity(n), -1.0);
}

MetaplecticElement mp_mul(const MetaplecticElement& m1, const MetaplecticElement& m2) {
    if (m1.n() != m2.n()) throw DimensionError("mp_mul: dimension mismatch");
    // eps_{12}(Z) = eps_1(g2 Z) eps_2(Z), evaluated at Z = iE.
    const CMat g2_base = fractional_linear(m2.g(), base(m2.n()));
    const cplx eps = branch_continue(m1, g2_base) * m2.eps0();
    return MetaplecticElement::make(compose(m1.g(), m2.g()), eps);
}

MetaplecticElement mp_inv(const MetaplecticElement& m) {
    // eps_inv(W) eps(g^{-1} W) = 1 at W = iE.
    const SymplecticMatrix ginv = inverse(m.g());
    const CMat w = fractional_linear(ginv, base(m.n()));
    return MetaplecticElement::make(ginv, 1.0 / branch_continue(m, w));
}

MetaplecticElement mp_shear(const RMat& B) {
    return MetaplecticElement::make(generator_shear(B), 1.0);
}

MetaplecticElement mp_fourier(int n) {
    return MetaplecticElement::make(generator_fourier(n), std::polar(1.0, -n * pi / 4));
}

MetaplecticElement mp_gl(const RMat& A) {
    const SymplecticMatrix g = generator_gl(A);
    const double detD = g.D().determinant();
    const cplx eps = detD > 0 ? cplx(std::sqrt(detD)) : cplx(0.0, std::sqrt(-detD));
    return MetaplecticElement::make(g, eps);
}

MetaplecticElement mp_rotation(int n, double theta) {
    return MetaplecticElement::make(rotation(n, theta), std::polar(1.0, n * theta / 2));
}

MetaplecticElement mp_flow(const QuadraticHamiltonian& H, double t) {
    const int n = H.n();
    const SymplecticMatrix g = hamiltonian_flow(H, t);
    const CMat start = base(n);
    const cplx eps = continue_sqrt(
        [&](double s) {
            const SymplecticMatrix gs = hamiltonian_flow(H, s * t);
            return (gs.C().cast<cplx>() * start + gs.D().cast<cplx>()).determinant();
        },
        1.0);
    return MetaplecticElement::make(g, eps);
}

MaslovPhase maslov_boundary_phase(const MetaplecticElement& m, const BoundaryChartPoint& a) {
    if (a.n() != m.n()) throw DimensionError("maslov_boundary_phase: dimension mismatch");
    const int n = m.n();
    const CMat ac = a.a().cast<cplx>();
    const cplx det = cocycle_det(m.g(), ac);
    if (std::abs(det) <= 1e-8)
        throw BoundaryCausticError("maslov_boundary_phase: det(C a + D) vanishes; change chart");

    constexpr std::array<double, 3> ys{1e-2, 1e-3, 1e-4};
    std::array<cplx, 3> vals;
    for (std::size_t i = 0; i < ys.size(); ++i)
        vals[i] = 1.0 / branch_continue(m, CMat(ac + ys[i] * I * CMat::Identity(n, n)));

    // Quadratic Lagrange extrapolation to y = 0.
    cplx limit = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        double w = 1.0;
        for (std::size_t j = 0; j < ys.size(); ++j)
            if (j != i) w *= (0.0 - ys[j]) / (ys[i] - ys[j]);
        limit += w * vals[i];
    }

    MaslovPhase out{};
    out.modulus = 1.0 / std::sqrt(std::abs(det));
    out.limit = limit;
    const double phase = std::arg(limit);
    int k = static_cast<int>(std::lround(phase / (pi / 2)));
    out.snap_residual = std::abs(phase - k * pi / 2);
    out.k = ((k % 4) + 4) % 4;
    if (std::abs(std::abs(limit) - out.modulus) > 1e-4 * out.modulus)
        throw ContinuationError("maslov_boundary_phase: boundary limit did not converge");
    return out;
}

}  // namespace weil
