// Runs the verification suites and reports one line per acceptance criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "weilkit/suites.hpp"

using weil::CheckResult;

namespace {

struct Run {
    std::vector<CheckResult> checks;
    double seconds = 0.0;
};

std::map<std::string, Run> runs;

const Run& suite(const std::string& name) {
    auto it = runs.find(name);
    if (it != runs.end()) return it->second;
    weil::SuiteOptions opt;
    const auto t0 = std::chrono::steady_clock::now();
    Run r;
    r.checks = weil::run_suite(name, opt);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("  [%s] %zu checks in %.1f s\n", name.c_str(), r.checks.size(), r.seconds);
    for (const auto& c : r.checks)
        std::printf("    %-40s %-4s residual %.3e %s %.3e\n", c.check.c_str(), c.pass ? "ok" : "FAIL",
                    c.residual, c.lower_bound ? ">" : "<", c.tolerance);
    return runs.emplace(name, std::move(r)).first->second;
}

bool all_pass(const Run& r, const std::function<bool(const std::string&)>& select) {
    bool any = false;
    for (const auto& c : r.checks) {
        if (!select(c.check)) continue;
        any = true;
        if (!c.pass) return false;
    }
    return any;
}

auto named(std::vector<std::string> names) {
    return [names = std::move(names)](const std::string& c) {
        for (const auto& n : names)
            if (c == n) return true;
        return false;
    };
}

bool everything(const std::string&) { return true; }

struct Verdict {
    std::string what;
    bool ok;
};

std::map<int, Verdict> verdicts;

void report(int id, const char* what, bool ok, const std::string& extra = "") {
    verdicts[id] = {what + extra, ok};
}

std::string seconds(double s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.1f s)", s);
    return buf;
}

}  // namespace

int main() {
    {
        const Run& r = suite("cocycle");
        report(1, "metaplectic products are associative and identity words are central",
               all_pass(r, named({"mp_mul_associativity", "identity_words_central"})) && r.seconds < 30.0,
               seconds(r.seconds));
    }
    {
        const Run& r = suite("evolution");
        report(2, "grid evolution of Gaussians matches the parameter action",
               all_pass(r, named({"gaussian_evolution_vs_mp_act_n1", "gaussian_evolution_vs_mp_act_n2"})) &&
                   r.seconds < 120.0,
               seconds(r.seconds));
        report(3, "conjugation of Heisenberg operators", all_pass(r, named({"conjugation_property"})));
        report(10, "unitarity and parity of the evolution",
               all_pass(r, named({"evolution_unitarity", "evolution_parity"})));
    }
    report(4, "transform equivariance, closed form and grid", all_pass(suite("equivariance"), everything));
    report(5, "second-order systems, convergence order and negative controls",
           all_pass(suite("pde"), everything));
    report(6, "exact quadratic propagator", all_pass(suite("propagator"), everything));
    report(7, "invariant Siegel norm", all_pass(suite("norm42"), everything));
    report(8, "polynomial growth bounds", all_pass(suite("growth"), everything));
    report(9, "Maslov quarter-turn phases",
           all_pass(suite("cocycle"), named({"maslov_fourier_snap", "maslov_fourier_cyclic_breaks"})));
    int failures = 0;
    for (const auto& [id, v] : verdicts) {
        std::printf("%s criterion %d: %s\n", v.ok ? "PASS" : "FAIL", id, v.what.c_str());
        failures += !v.ok;
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
