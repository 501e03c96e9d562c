#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weilkit/grid.hpp"

namespace weil {

/// One verified quantity. Upper-bound checks pass when residual < tolerance;
/// lower-bound checks (negative controls) pass when residual > tolerance.
struct CheckResult {
    std::string check;
    double residual;
    double tolerance;
    bool pass;
    nlohmann::json params;
    bool lower_bound = false;
};

struct SuiteOptions {
    std::uint64_t seed = 7;
    std::optional<double> tol;       ///< replaces every upper-bound tolerance
    std::optional<int> n;            ///< restricts dimension-swept suites
    std::optional<GridSpec> grid;    ///< replaces the default grid for that n
};

const std::vector<std::string>& suite_names();
/// Throws DomainError for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opt);

std::vector<CheckResult> suite_symplectic(const SuiteOptions& opt);
std::vector<CheckResult> suite_cocycle(const SuiteOptions& opt);
std::vector<CheckResult> suite_evolution(const SuiteOptions& opt);
std::vector<CheckResult> suite_propagator(const SuiteOptions& opt);
std::vector<CheckResult> suite_equivariance(const SuiteOptions& opt);
std::vector<CheckResult> suite_pde(const SuiteOptions& opt);
std::vector<CheckResult> suite_growth(const SuiteOptions& opt);
std::vector<CheckResult> suite_norm42(const SuiteOptions& opt);

nlohmann::json to_json(const CheckResult& r);

namespace detail {
CheckResult upper(const SuiteOptions& opt, std::string check, double residual, double tolerance,
                  nlohmann::json params = nlohmann::json::object());
CheckResult lower(std::string check, double residual, double threshold,
                  nlohmann::json params = nlohmann::json::object());
GridSpec grid_for(const SuiteOptions& opt, int n);
}  // namespace detail

}  // namespace weil
