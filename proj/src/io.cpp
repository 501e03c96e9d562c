#include "weilkit/io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <iterator>

#include "weilkit/errors.hpp"

namespace weil::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

json to_json(const RMat& M) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
        rows.push_back(row);
    }
    return rows;
}

RMat matrix_from_json(const json& j, const char* what) {
    return guarded(what, [&] {
        if (!j.is_array() || j.empty()) throw FormatError(std::string(what) + ": expected matrix");
        const auto rows = j.size();
        const auto cols = j.at(0).size();
        RMat M(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (!j[r].is_array() || j[r].size() != cols)
                throw FormatError(std::string(what) + ": ragged matrix");
            for (std::size_t c = 0; c < cols; ++c) M(r, c) = j[r][c].get<double>();
        }
        return M;
    });
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const char* what) {
    return guarded(what, [&] {
        if (j.is_number()) return cplx(j.get<double>(), 0.0);
        if (!j.is_array() || j.size() != 2) throw FormatError(std::string(what) + ": expected [re, im]");
        return cplx(j[0].get<double>(), j[1].get<double>());
    });
}

json to_json(const SymplecticMatrix& g) {
    return {{"n", g.n()}, {"A", to_json(g.A())}, {"B", to_json(g.B())},
            {"C", to_json(g.C())}, {"D", to_json(g.D())}};
}

SymplecticMatrix symplectic_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("symplectic matrix: expected object");
    return guarded("symplectic matrix", [&] {
        const RMat A = matrix_from_json(j.at("A"), "A"), B = matrix_from_json(j.at("B"), "B");
        const RMat C = matrix_from_json(j.at("C"), "C"), D = matrix_from_json(j.at("D"), "D");
        if (j.contains("n") && j["n"].get<int>() != A.rows())
            throw FormatError("symplectic matrix: n does not match block size");
        return SymplecticMatrix::from_blocks(A, B, C, D, 1e-9);
    });
}

json to_json(const MetaplecticElement& m) {
    json j = to_json(m.g());
    j["eps0"] = to_json(m.eps0());
    return j;
}

MetaplecticElement metaplectic_from_json(const json& j) {
    const SymplecticMatrix g = symplectic_from_json(j);
    if (!j.contains("eps0")) return MetaplecticElement::lift(g);
    return MetaplecticElement::make(g, complex_from_json(j["eps0"], "eps0"));
}

json to_json(const SiegelPoint& Z) {
    return {{"n", Z.n()}, {"re", to_json(RMat(Z.Z().real()))}, {"im", to_json(RMat(Z.Z().imag()))}};
}

SiegelPoint siegel_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("Siegel point: expected object");
    return guarded("Siegel point", [&] {
        return SiegelPoint::make(matrix_from_json(j.at("re"), "re"), matrix_from_json(j.at("im"), "im"));
    });
}

json to_json(const GaussianState& s) {
    return {{"lambda", to_json(s.lambda())}, {"Z", to_json(s.point())}};
}

GaussianState gaussian_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("Gaussian state: expected object");
    return guarded("Gaussian state", [&] {
        return GaussianState::make(complex_from_json(j.at("lambda"), "lambda"), siegel_from_json(j.at("Z")));
    });
}

QuadraticHamiltonian hamiltonian_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("Hamiltonian: expected object");
    return guarded("Hamiltonian", [&] {
        return QuadraticHamiltonian(matrix_from_json(j.at("a"), "a"), matrix_from_json(j.at("b"), "b"),
                                    matrix_from_json(j.at("c"), "c"));
    });
}

json to_json(const QuadraticHamiltonian& H) {
    return {{"a", to_json(H.a())}, {"b", to_json(H.b())}, {"c", to_json(H.c())}};
}

json to_json(const PropagatorKernel& K) {
    return {{"t", K.t}, {"flow", to_json(K.flow)}, {"amp", to_json(K.amp)}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << text;
    if (!out) throw FormatError("write failed for " + path.string());
}

namespace {

void put_le(std::ostream& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(bits >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), 8);
}

double get_le(const unsigned char* p) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

}  // namespace

void write_grid(const std::filesystem::path& json_path, const GridFunction& f) {
    json h = {{"n", f.spec.n}, {"R", f.spec.R}, {"N", f.spec.N}};
    if (f.spec.N <= 64) {
        json s = json::array();
        for (const auto& v : f.values) {
            s.push_back(v.real());
            s.push_back(v.imag());
        }
        h["samples"] = std::move(s);
    } else {
        auto bin = json_path;
        bin.replace_extension(".bin");
        std::ofstream out(bin, std::ios::binary);
        if (!out) throw FormatError("cannot write " + bin.string());
        for (const auto& v : f.values) {
            put_le(out, v.real());
            put_le(out, v.imag());
        }
        if (!out) throw FormatError("write failed for " + bin.string());
        h["payload"] = bin.filename().string();
    }
    write_text_file(json_path, h.dump(2) + "\n");
}

GridFunction read_grid(const std::filesystem::path& json_path) {
    const json h = read_json_file(json_path);
    const GridSpec spec = guarded("grid header", [&] {
        return GridSpec::make(h.at("n").get<int>(), h.at("R").get<double>(), h.at("N").get<int>());
    });
    GridFunction f(spec);
    if (h.contains("samples")) {
        const auto& s = h["samples"];
        if (!s.is_array() || s.size() != 2 * f.size()) throw FormatError("grid: sample count mismatch");
        guarded("grid samples", [&] {
            for (std::size_t k = 0; k < f.size(); ++k)
                f.values[k] = cplx(s[2 * k].get<double>(), s[2 * k + 1].get<double>());
            return 0;
        });
        return f;
    }
    if (!h.contains("payload") || !h["payload"].is_string())
        throw FormatError("grid: neither samples nor payload present");
    const auto bin = json_path.parent_path() / h["payload"].get<std::string>();
    std::ifstream in(bin, std::ios::binary);
    if (!in) throw FormatError("cannot open " + bin.string());
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (raw.size() != 16 * f.size()) throw FormatError("grid: payload size mismatch");
    for (std::size_t k = 0; k < f.size(); ++k)
        f.values[k] = cplx(get_le(&raw[16 * k]), get_le(&raw[16 * k + 8]));
    return f;
}

}  // namespace weil::io
