#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "weilkit/errors.hpp"
#include "weilkit/evolution.hpp"
#include "weilkit/io.hpp"
#include "weilkit/propagator.hpp"
#include "weilkit/suites.hpp"
#include "weilkit/transform.hpp"

using namespace weil;
using io::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string suite = "all";
    std::uint64_t seed = 7;
    std::optional<int> n;
    std::optional<double> grid_R;
    std::optional<int> grid_N;
    std::optional<double> tol;
    std::string in, element, points, path, out;
    std::string format = "json";
    double t = 1.0;
    double y0 = SiegelNormOptions{}.y0;
};

void add_common(CLI::App* sub, Config& c) {
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--n", c.n, "dimension (1, 2 or 3)");
    sub->add_option("--grid-R", c.grid_R, "grid half-width");
    sub->add_option("--grid-N", c.grid_N, "points per axis (power of two)");
    sub->add_option("--tol", c.tol, "tolerance override");
    sub->add_option("--in", c.in, "input file");
    sub->add_option("--out", c.out, "output file (default: stdout)");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

void validate(const Config& c) {
    if (c.n && (*c.n < 1 || *c.n > 3)) throw UsageError("--n must be 1, 2 or 3");
    if (c.grid_N && (*c.grid_N < 2 || (*c.grid_N & (*c.grid_N - 1)) != 0))
        throw UsageError("--grid-N must be a power of two");
    if (c.grid_R && !(*c.grid_R > 0.0)) throw UsageError("--grid-R must be positive");
    if (c.tol && !(*c.tol >= 0.0)) throw UsageError("--tol must be non-negative");
    if ((c.grid_R || c.grid_N) && !c.n) throw UsageError("--grid-R/--grid-N require --n");
}

std::optional<GridSpec> grid_override(const Config& c) {
    if (!c.n || (!c.grid_R && !c.grid_N)) return std::nullopt;
    const GridSpec d = default_grid(*c.n);
    return GridSpec::make(*c.n, c.grid_R.value_or(d.R), c.grid_N.value_or(d.N));
}

GridSpec grid_of(const Config& c, int n) {
    if (c.n && *c.n != n) throw UsageError("--n does not match the input dimension");
    const GridSpec d = default_grid(n);
    return GridSpec::make(n, c.grid_R.value_or(d.R), c.grid_N.value_or(d.N));
}

void emit(const Config& c, const std::string& text) {
    if (c.out.empty())
        std::cout << text;
    else
        io::write_text_file(c.out, text);
}

std::string csv_cell(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

// {"hermite": [k, ...]}, a Gaussian state {"lambda", "Z"}, or a grid file header.
TransformSource load_source(const Config& c) {
    if (c.in.empty()) throw UsageError("--in is required");
    const json j = io::read_json_file(c.in);
    if (j.contains("hermite")) return GaussianExpansion::hermite(j["hermite"].get<MultiIndex>());
    if (j.contains("lambda")) return GaussianExpansion::from_state(io::gaussian_from_json(j));
    if (j.contains("R")) return io::read_grid(c.in);
    throw FormatError("unrecognized source in " + c.in);
}

int cmd_verify(const Config& c) {
    SuiteOptions opt;
    opt.seed = c.seed;
    opt.tol = c.tol;
    opt.n = c.n;
    opt.grid = grid_override(c);
    std::vector<std::string> names;
    if (c.suite == "all")
        names = suite_names();
    else {
        const auto& known = suite_names();
        if (std::find(known.begin(), known.end(), c.suite) == known.end())
            throw UsageError("unknown suite: " + c.suite);
        names = {c.suite};
    }

    json report = {{"command", "verify"}, {"seed", c.seed}, {"timestamp", timestamp()}};
    report["config"] = {{"suite", c.suite}};
    if (c.n) report["config"]["n"] = *c.n;
    if (c.tol) report["config"]["tol"] = *c.tol;
    if (opt.grid) report["config"]["grid"] = {{"R", opt.grid->R}, {"N", opt.grid->N}};
    bool all = true;
    std::ostringstream csv;
    csv << "suite,check,residual,tolerance,pass\n";
    json suites = json::array();
    for (const auto& name : names) {
        std::cerr << "running suite " << name << "\n";
        const auto results = run_suite(name, opt);
        bool ok = true;
        json checks = json::array();
        for (const auto& r : results) {
            ok = ok && r.pass;
            checks.push_back(to_json(r));
            csv << name << ',' << r.check << ',' << csv_cell(r.residual) << ',' << csv_cell(r.tolerance) << ','
                << (r.pass ? "true" : "false") << '\n';
        }
        all = all && ok;
        suites.push_back({{"suite", name}, {"pass", ok}, {"checks", checks}});
    }
    report["suites"] = suites;
    report["pass"] = all;
    emit(c, c.format == "csv" ? csv.str() : report.dump(2) + "\n");
    return all ? kPass : kFail;
}

int cmd_evolve(const Config& c) {
    if (c.in.empty() || c.element.empty()) throw UsageError("evolve needs --in and --element");
    if (c.out.empty()) throw UsageError("evolve needs --out (grid file)");
    const MetaplecticElement m = io::metaplectic_from_json(io::read_json_file(c.element));
    const json j = io::read_json_file(c.in);
    const GridFunction f = j.contains("R") ? io::read_grid(c.in)
                                           : sample_gaussian(io::gaussian_from_json(j), grid_of(c, m.n()));
    if (f.n() != m.n()) throw DimensionError("element and state dimensions differ");
    GridFunction g(f.spec);
    try {
        g = evolution_apply_general(m, f);
    } catch (const FactorizationError& e) {
        throw FactorizationError(std::string(e.what()) +
                                 " (no rotation splitting gives well-conditioned direct kernels)");
    } catch (const SingularCError& e) {
        throw SingularCError(std::string(e.what()) + " (apply the element as a product of factors)");
    }
    io::write_grid(c.out, g);
    json h = io::read_json_file(c.out);
    std::size_t peak = 0;
    for (std::size_t k = 0; k < g.size(); ++k)
        if (std::abs(g.values[k]) > std::abs(g.values[peak])) peak = k;
    h["metadata"] = {{"norm_in", norm(f)},
                     {"norm_out", norm(g)},
                     {"peak_phase", std::arg(g.values[peak])},
                     {"boundary_decay", boundary_decay(g)},
                     {"element", io::to_json(m)}};
    io::write_text_file(c.out, h.dump(2) + "\n");
    std::cout << h["metadata"].dump(2) << "\n";
    return kPass;
}

std::vector<SiegelPoint> growth_path(const std::string& kind, int n) {
    const RMat E = RMat::Identity(n, n);
    std::vector<SiegelPoint> p;
    for (int k = 0; k <= 24; ++k) {
        if (kind == "boundary")
            p.push_back(SiegelPoint::make(RMat::Zero(n, n), E * std::pow(2.0, -k)));
        else if (kind == "radial")
            p.push_back(SiegelPoint::make(E * std::pow(2.0, k) / std::sqrt(double(n)), E));
        else
            throw UsageError("--path must be boundary or radial");
    }
    return p;
}

int cmd_transform(const Config& c) {
    const TransformSampler u(load_source(c));
    std::vector<SiegelPoint> pts;
    if (!c.points.empty()) {
        const json j = io::read_json_file(c.points);
        if (j.is_array())
            for (const auto& z : j) pts.push_back(io::siegel_from_json(z));
        else
            pts.push_back(io::siegel_from_json(j));
    } else if (!c.path.empty()) {
        pts = growth_path(c.path, u.n());
    } else {
        pts.push_back(SiegelPoint::base_point(u.n()));
    }
    for (const auto& Z : pts)
        if (Z.n() != u.n()) throw DimensionError("point dimension does not match the source");

    json rows = json::array();
    std::ostringstream csv;
    csv << "index,u_re,u_im";
    for (int l = 0; l < u.n(); ++l) csv << ",u" << l << "_re,u" << l << "_im";
    csv << '\n';
    bool warn = u.truncation_warning();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto e = transform_point(u, pts[i]);
        const auto o = transform_odd(u, pts[i]);
        json odd = json::array();
        csv << i << ',' << csv_cell(e.value.real()) << ',' << csv_cell(e.value.imag());
        for (int l = 0; l < u.n(); ++l) {
            odd.push_back(io::to_json(o.value(l)));
            csv << ',' << csv_cell(o.value(l).real()) << ',' << csv_cell(o.value(l).imag());
        }
        csv << '\n';
        rows.push_back({{"Z", io::to_json(pts[i])}, {"u", io::to_json(e.value)}, {"u_odd", odd}});
    }
    json report = {{"command", "transform"}, {"timestamp", timestamp()}, {"n", u.n()},
                   {"truncation_warning", warn}, {"samples", rows}};
    if (!c.path.empty() && u.parity() != Parity::Odd) {
        if (auto g = fit_growth(even_field(u), pts))
            report["growth"] = {{"C", g->C}, {"M", g->M}, {"N", g->N}, {"respected", g->respected}};
        else
            report["growth"] = nullptr;
    }
    emit(c, c.format == "csv" ? csv.str() : report.dump(2) + "\n");
    return kPass;
}

int cmd_kernel(const Config& c) {
    if (c.in.empty()) throw UsageError("kernel needs --in (Hamiltonian)");
    const QuadraticHamiltonian H = io::hamiltonian_from_json(io::read_json_file(c.in));
    try {
        emit(c, io::to_json(build_kernel(H, c.t)).dump(2) + "\n");
    } catch (const SingularFocalPointError& e) {
        std::cerr << "error: " << e.what() << " at t = " << e.time() << "\n";
        return kUsage;
    }
    return kPass;
}

int cmd_cocycle(const Config& c) {
    if (c.in.empty()) throw UsageError("cocycle needs --in");
    const json j = io::read_json_file(c.in);
    if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty())
        throw FormatError("cocycle input needs a non-empty \"elements\" array");
    std::vector<MetaplecticElement> ms;
    for (const auto& e : j["elements"]) ms.push_back(io::metaplectic_from_json(e));
    MetaplecticElement prod = ms.front();
    for (std::size_t i = 1; i < ms.size(); ++i) prod = mp_mul(prod, ms[i]);
    json report = {{"command", "cocycle"}, {"timestamp", timestamp()}, {"product", io::to_json(prod)}};
    bool ok = true;
    if (j.contains("Z")) {
        const SiegelPoint Z = io::siegel_from_json(j["Z"]);
        // eps_{m1...mk}(Z) against the chained product of factors.
        cplx chained = 1.0;
        SiegelPoint W = Z;
        for (std::size_t i = ms.size(); i-- > 0;) {
            chained *= branch_continue(ms[i], W);
            W = siegel_action(ms[i].g(), W);
        }
        const cplx direct = branch_continue(prod, Z);
        const double res = std::abs(direct - chained) / std::abs(direct);
        const double tol = c.tol.value_or(1e-9);
        ok = res < tol;
        report["eps"] = io::to_json(direct);
        report["eps_chained"] = io::to_json(chained);
        report["residual"] = res;
        report["tolerance"] = tol;
        report["pass"] = ok;
    }
    emit(c, report.dump(2) + "\n");
    return ok ? kPass : kFail;
}

int cmd_norm42(const Config& c) {
    const TransformSampler u(load_source(c));
    SiegelNormOptions opt;
    opt.y0 = c.y0;
    const SiegelNormResult r = siegel_norm_n1(u, opt);
    const double nn = u.source_norm() * u.source_norm();
    const json report = {{"command", "norm42"}, {"timestamp", timestamp()}, {"value", r.value},
                         {"norm_squared", nn}, {"ratio", r.value / nn}, {"y0", r.y0},
                         {"partial", r.partial}, {"estimates", r.estimates}};
    emit(c, report.dump(2) + "\n");
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weilkit: metaplectic and Gaussian-transform numerics"};
    app.require_subcommand(1);
    Config c;

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify, c);
    verify->add_option("--suite", c.suite, "suite name or all");

    auto* evolve = app.add_subcommand("evolve", "apply a metaplectic element to a state");
    add_common(evolve, c);
    evolve->add_option("--element", c.element, "element JSON")->required();

    auto* transform = app.add_subcommand("transform", "sample the Gaussian transform");
    add_common(transform, c);
    transform->add_option("--points", c.points, "JSON Siegel point or array of points");
    transform->add_option("--path", c.path, "growth path: boundary or radial");

    auto* kernel = app.add_subcommand("kernel", "quadratic propagator kernel");
    add_common(kernel, c);
    kernel->add_option("--t", c.t, "time");

    auto* cocycle = app.add_subcommand("cocycle", "metaplectic products and branch cocycle");
    add_common(cocycle, c);

    auto* norm42 = app.add_subcommand("norm42", "invariant Siegel norm, n = 1");
    add_common(norm42, c);
    norm42->add_option("--y0", c.y0, "largest inner cutoff");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kPass : kUsage;
    }

    try {
        validate(c);
        if (*verify) return cmd_verify(c);
        if (*evolve) return cmd_evolve(c);
        if (*transform) return cmd_transform(c);
        if (*kernel) return cmd_kernel(c);
        if (*cocycle) return cmd_cocycle(c);
        if (*norm42) return cmd_norm42(c);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const weil::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
