#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace weil {

using cplx = std::complex<double>;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

/// Returns (X + X^T)/2, throwing SymmetryError when the antisymmetric part
/// exceeds `tol` (max-abs, relative to max(1, |X|_max)).
RMat symmetrize(const RMat& X, double tol = 1e-8);
CMat symmetrize(const CMat& X, double tol = 1e-8);

}  // namespace weil
