#include "helpers.hpp"

#include <filesystem>
#include <fstream>

#include "weilkit/errors.hpp"
#include "weilkit/io.hpp"
#include "weilkit/random.hpp"

using namespace weil;
using testing::check_close;

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "weilkit_io_test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("element round trip") {
    Rng rng(6);
    for (int k = 0; k < 10; ++k) {
        const auto m = random_generator_element(1 + k % 3, rng);
        const auto back = io::metaplectic_from_json(io::json::parse(io::to_json(m).dump()));
        CHECK((back.g().matrix() - m.g().matrix()).norm() < 1e-15);
        check_close(back.eps0(), m.eps0(), 0.0);
    }
    // Without eps0 the lift nearest to +1 is taken.
    io::json j = io::to_json(mp_fourier(1));
    j.erase("eps0");
    check_close(io::metaplectic_from_json(j).eps0(), std::exp(-I * pi / 4.0), 1e-15);
}

TEST_CASE("state and Hamiltonian round trip") {
    Rng rng(2);
    const auto s = GaussianState::make(cplx(0.3, -2.0), random_siegel(2, rng));
    const auto back = io::gaussian_from_json(io::to_json(s));
    CHECK((back.Z() - s.Z()).norm() == 0.0);
    check_close(back.lambda(), s.lambda(), 0.0);

    const auto H = random_hamiltonian(2, 1.0, rng);
    const auto H2 = io::hamiltonian_from_json(io::to_json(H));
    CHECK((H2.c() - H.c()).norm() == 0.0);
}

TEST_CASE("malformed inputs raise FormatError") {
    CHECK_THROWS_AS(io::matrix_from_json(io::json::parse("[[1, 2], [3]]"), "M"), FormatError);
    CHECK_THROWS_AS(io::matrix_from_json(io::json::parse("\"x\""), "M"), FormatError);
    CHECK_THROWS_AS(io::complex_from_json(io::json::parse("[1]"), "z"), FormatError);
    CHECK_THROWS_AS(io::symplectic_from_json(io::json::parse(R"({"A": [[1]]})")), FormatError);
    CHECK_THROWS_AS(io::gaussian_from_json(io::json::parse("[]")), FormatError);
    CHECK_THROWS_AS(io::hamiltonian_from_json(io::json::parse(R"({"a": [[1]], "b": [[0]]})")),
                    FormatError);

    const fs::path p = scratch_dir() / "broken.json";
    std::ofstream(p) << "{\"n\": 1,";
    CHECK_THROWS_AS(io::read_json_file(p), FormatError);
    CHECK_THROWS_AS(io::read_json_file(scratch_dir() / "missing.json"), FormatError);
}

TEST_CASE("grid files inline and with payload") {
    const fs::path d = scratch_dir();
    for (int N : {32, 256}) {
        const GridSpec s = GridSpec::make(1, 6.0, N);
        const auto f = hermite_state({3}, s);
        const fs::path p = d / ("grid" + std::to_string(N) + ".json");
        io::write_grid(p, f);
        const io::json h = io::read_json_file(p);
        CHECK(h.contains("samples") == (N <= 64));
        CHECK(h.contains("payload") == (N > 64));
        const auto g = io::read_grid(p);
        CHECK(g.spec == s);
        CHECK(relative_error(g, f) == 0.0);
    }
    std::ofstream(d / "short.json") << R"({"n": 1, "R": 1.0, "N": 2, "samples": [1, 0]})";
    CHECK_THROWS_AS(io::read_grid(d / "short.json"), FormatError);
    std::ofstream(d / "nopayload.json") << R"({"n": 1, "R": 1.0, "N": 2})";
    CHECK_THROWS_AS(io::read_grid(d / "nopayload.json"), FormatError);
    std::ofstream(d / "badspec.json") << R"({"n": 1, "R": -1.0, "N": 2})";
    CHECK_THROWS_AS(io::read_grid(d / "badspec.json"), DomainError);
}
