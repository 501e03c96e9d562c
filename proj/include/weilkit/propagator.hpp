#pragma once

#include "weilkit/grid.hpp"
#include "weilkit/siegel.hpp"

namespace weil {

/// K(x, y) = amp exp(i(1/2 x^T A C^{-1} x - y^T C^{-1} x + 1/2 y^T C^{-1} D y)).
struct PropagatorKernel {
    double t;
    SymplecticMatrix flow;
    cplx amp;    ///< amp^2 (2 pi i)^n det C = 1
    RMat AC;     ///< A C^{-1}
    RMat Cinv;   ///< C^{-1}
    RMat CD;     ///< C^{-1} D
};

/// Throws SingularFocalPointError when |det C(t)| <= 1e-8. The branch of amp
/// follows the metaplectic lift of the flow continued in t from t = 0, which
/// near t = 0 is the free-flow asymptote (2 pi i t)^{-n/2} (det c)^{-1/2}.
PropagatorKernel build_kernel(const QuadraticHamiltonian& H, double t);

cplx kernel_evaluate(const PropagatorKernel& K, const RVec& x, const RVec& y);

/// Direct quadrature of the kernel against f on f's grid.
GridFunction propagate_grid(const PropagatorKernel& K, const GridFunction& f);

/// Strang splitting for i psi_t = H psi: b-part half step, c-part half step,
/// a-part full step, c-part half step, b-part half step. Each b-part step is
/// followed by a 2/3-rule spectral filter. Throws IntegratorError when the norm
/// drifts by more than 1e-3.
GridFunction reference_integrator(const QuadraticHamiltonian& H, double t, const GridFunction& f,
                                  int steps);

}  // namespace weil
