#include "helpers.hpp"

#include <cmath>
#include <limits>

#include "weilkit/errors.hpp"
#include "weilkit/suites.hpp"

using namespace weil;

TEST_CASE("pass semantics") {
    SuiteOptions opt;
    CHECK(detail::upper(opt, "a", 1e-13, 1e-12).pass);
    CHECK_FALSE(detail::upper(opt, "a", 1e-12, 1e-12).pass);
    CHECK_FALSE(detail::upper(opt, "a", std::numeric_limits<double>::quiet_NaN(), 1.0).pass);
    opt.tol = 0.0;
    const auto zero = detail::upper(opt, "a", 0.0, 1e-12);
    CHECK(zero.tolerance == 0.0);
    CHECK_FALSE(zero.pass);

    CHECK(detail::lower("c", 2.0, 1.0).pass);
    CHECK_FALSE(detail::lower("c", 0.5, 1.0).pass);
    const auto j = to_json(detail::lower("c", 2.0, 1.0));
    CHECK(j.at("bound") == "lower");
    CHECK_FALSE(to_json(detail::upper({}, "a", 0.0, 1.0)).contains("bound"));
}

TEST_CASE("suite registry") {
    CHECK(suite_names().size() == 8);
    CHECK_THROWS_AS(run_suite("nope", {}), DomainError);
}

TEST_CASE("symplectic suite passes and is reproducible") {
    const auto a = run_suite("symplectic", {});
    const auto b = run_suite("symplectic", {});
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        INFO(a[k].check);
        CHECK(a[k].pass);
        CHECK(a[k].residual == b[k].residual);
    }
}

TEST_CASE("zero tolerance fails every upper-bound check") {
    SuiteOptions opt;
    opt.tol = 0.0;
    for (const auto& r : run_suite("cocycle", opt)) {
        INFO(r.check);
        if (!r.lower_bound) CHECK_FALSE(r.pass);
    }
}

TEST_CASE("grid override") {
    SuiteOptions opt;
    CHECK(detail::grid_for(opt, 2) == default_grid(2));
    opt.grid = GridSpec::make(2, 6.0, 64);
    CHECK(detail::grid_for(opt, 2) == GridSpec::make(2, 6.0, 64));
}
