#pragma once

#include "weilkit/grid.hpp"
#include "weilkit/siegel.hpp"

namespace weil {

/// U f(x) = kappa int exp(i(1/2 x^T A C^{-1} x - y^T C^{-1} x + 1/2 y^T C^{-1} D y)) f(y) dy
/// with kappa fixed by the branch eps0: U psi_{iE} = psi_{g(iE)} / eps0.
/// Throws SingularCError when |det C| <= 1e-8.
GridFunction evolution_apply(const MetaplecticElement& m, const GridFunction& f);

/// Works for every element: C = 0 is applied as a coordinate change times a
/// chirp, otherwise the element is split as (m r^{-1}) r with r an oscillator
/// rotation whenever that is better conditioned than the direct kernel.
GridFunction evolution_apply_general(const MetaplecticElement& m, const GridFunction& f);

/// sum_j (v_j x_j + w_j i d/dx_j) f.
GridFunction apply_heisenberg(const GridFunction& f, const HeisenbergVector& h);
GridFunction apply_heisenberg(const GridFunction& f, const CVec& v, const CVec& w);

/// |U(h f) - (g h)(U f)| / |f|.
double conjugation_residual(const MetaplecticElement& m, const HeisenbergVector& h,
                            const GridFunction& f);

}  // namespace weil
