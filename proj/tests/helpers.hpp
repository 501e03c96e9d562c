#pragma once

#include <doctest.h>

#include "weilkit/types.hpp"

namespace testing {

inline weil::RMat m1(double v) { return weil::RMat::Constant(1, 1, v); }

inline weil::RMat mat(std::initializer_list<std::initializer_list<double>> rows) {
    weil::RMat M(rows.size(), rows.begin()->size());
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (double v : row) M(r, c++) = v;
        ++r;
    }
    return M;
}

inline void check_close(weil::cplx a, weil::cplx b, double tol) {
    INFO("got " << a << " expected " << b);
    CHECK(std::abs(a - b) <= tol);
}

}  // namespace testing
