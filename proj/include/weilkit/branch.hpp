#pragma once

#include <functional>

#include "weilkit/types.hpp"

namespace weil {

/// Continues a square root of a nowhere-vanishing function f along s in [0, 1].
///
/// `root_at_start` must satisfy root_at_start^2 = f(0). The segment is walked
/// with adaptive bisection: a step is accepted when the phase increment of f
/// over the step, and over each of its halves, stays below pi/2 and the two
/// halves add up to the whole. More than `max_depth` bisections of a single
/// step raise ContinuationError. The returned value squares to f(1) to
/// working precision.
cplx continue_sqrt(const std::function<cplx(double)>& f, cplx root_at_start,
                   int max_depth = 40);

/// Principal square-root branch continued through a chain of segments.
/// `legs` is called with the leg index and local parameter s in [0, 1];
/// consecutive legs must join continuously.
cplx continue_sqrt_legs(const std::function<cplx(int, double)>& f, int legs,
                        cplx root_at_start, int max_depth = 40);

}  // namespace weil
