#include "weilkit/branch.hpp"

#include <cmath>

#include "weilkit/errors.hpp"

namespace weil {

namespace {

constexpr int kInitialSteps = 16;
constexpr double kMaxPhaseStep = pi / 2;

double phase_step(cplx from, cplx to) { return std::arg(to / from); }

}  // namespace

cplx continue_sqrt(const std::function<cplx(double)>& f, cplx root_at_start, int max_depth) {
    cplx f_cur = f(0.0);
    if (f_cur == cplx{0.0} || root_at_start == cplx{0.0})
        throw ContinuationError("continue_sqrt: function vanishes at the start point");

    cplx root = root_at_start;
    double s = 0.0;
    const double base = 1.0 / kInitialSteps;
    double h = base;
    const double h_min = std::ldexp(base, -max_depth);

    while (s < 1.0) {
        h = std::min(h, 1.0 - s);
        const cplx f_mid = f(s + 0.5 * h);
        const cplx f_end = f(s + h);
        if (f_mid == cplx{0.0} || f_end == cplx{0.0})
            throw ContinuationError("continue_sqrt: function vanishes on the path");

        const double full = phase_step(f_cur, f_end);
        const double first = phase_step(f_cur, f_mid);
        const double second = phase_step(f_mid, f_end);
        const bool ok = std::abs(full) < kMaxPhaseStep && std::abs(first) < kMaxPhaseStep &&
                        std::abs(second) < kMaxPhaseStep &&
                        std::abs(first + second - full) < 1e-6;
        if (!ok) {
            h *= 0.5;
            if (h < h_min)
                throw ContinuationError(
                    "continue_sqrt: phase step exceeds pi/2 at maximum subdivision depth");
            continue;
        }
        root *= std::sqrt(f_end / f_cur);
        f_cur = f_end;
        s += h;
        h = std::min(2.0 * h, base);
    }
    // Polish: the correction factor is within rounding of 1, so the principal
    // root keeps the tracked branch.
    root *= std::sqrt(f_cur / (root * root));
    return root;
}

cplx continue_sqrt_legs(const std::function<cplx(int, double)>& f, int legs, cplx root_at_start,
                        int max_depth) {
    cplx root = root_at_start;
    for (int leg = 0; leg < legs; ++leg)
        root = continue_sqrt([&](double s) { return f(leg, s); }, root, max_depth);
    return root;
}

}  // namespace weil
