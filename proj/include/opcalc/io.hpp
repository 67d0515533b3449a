#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "opcalc/evolution.hpp"
#include "opcalc/logrep.hpp"
#include "opcalc/matrix.hpp"

namespace opcalc {

using Json = nlohmann::json;

/// Array of rows, each entry [re, im]. Plain numbers are accepted on input
/// as real entries.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, std::string_view field = "matrix");

Json complex_to_json(cplx z);
cplx complex_from_json(const Json& j, std::string_view field);

/// {id, dim, horizon, kind, params}. Kinds: zero, constant, modulated,
/// affine, advection, diffusion, advection_tdep, table.
GeneratorSpec generator_from_json(const Json& j);

/// Exports any generator as a table of samples at the given times.
Json generator_to_table_json(const GeneratorSpec& g, std::span<const double> times);

/// {kappa, generator_id, grid: [[t, s], ...], a_matrices: [...]}
Json log_representation_to_json(const LogRepresentation& rep);

/// Reads and parses a JSON file; syntax errors become Error{ConfigError}
/// carrying line and column, unreadable files Error{IoError}.
Json read_json_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text, std::string_view source);

/// Writes the whole string or throws Error{IoError}.
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Shortest-to-read deterministic float text with 17 significant digits.
/// Non-finite values become "nan", "inf" or "-inf".
std::string format_double(double v);

}  // namespace opcalc
