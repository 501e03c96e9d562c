#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "weilkit/gaussian.hpp"
#include "weilkit/grid.hpp"
#include "weilkit/propagator.hpp"
#include "weilkit/siegel.hpp"

namespace weil::io {

using json = nlohmann::json;

json to_json(const RMat& M);
RMat matrix_from_json(const json& j, const char* what);
json to_json(cplx z);
cplx complex_from_json(const json& j, const char* what);

json to_json(const SymplecticMatrix& g);
SymplecticMatrix symplectic_from_json(const json& j);
json to_json(const MetaplecticElement& m);
MetaplecticElement metaplectic_from_json(const json& j);
json to_json(const SiegelPoint& Z);
SiegelPoint siegel_from_json(const json& j);
json to_json(const GaussianState& s);
GaussianState gaussian_from_json(const json& j);
QuadraticHamiltonian hamiltonian_from_json(const json& j);
json to_json(const QuadraticHamiltonian& H);
json to_json(const PropagatorKernel& K);

/// Parses a file; throws FormatError on I/O or syntax problems.
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// GridFunction files: a JSON header {"n","R","N"} with either inline
/// "samples": [re, im, ...] (only written for N <= 64) or "payload": a sibling
/// binary file of little-endian float64 interleaved re/im values.
void write_grid(const std::filesystem::path& json_path, const GridFunction& f);
GridFunction read_grid(const std::filesystem::path& json_path);

}  // namespace weil::io
