#include "opcalc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "opcalc/error.hpp"
#include "opcalc/lab.hpp"

namespace opcalc {

namespace {

[[noreturn]] void config_error(std::string_view field, const std::string& what) {
  throw Error(ErrorKind::ConfigError, "field '" + std::string(field) + "': " + what);
}

const Json& require(const Json& obj, const char* key, std::string_view field) {
  if (!obj.is_object() || !obj.contains(key)) config_error(field, std::string("missing '") + key + "'");
  return obj.at(key);
}

double number(const Json& j, std::string_view field) {
  if (!j.is_number()) config_error(field, "expected a number");
  return j.get<double>();
}

double number_or(const Json& obj, const char* key, double fallback, std::string_view field) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return number(obj.at(key), std::string(field) + "." + key);
}

std::function<double(double)> modulation_from_json(const Json& j, std::string_view field) {
  const Json& type = require(j, "type", field);
  if (!type.is_string()) config_error(field, "modulation type must be a string");
  const std::string kind = type.get<std::string>();
  if (kind == "affine") {
    const double offset = number_or(j, "offset", 1.0, field);
    const double slope = number_or(j, "slope", 1.0, field);
    return [offset, slope](double t) { return offset + slope * t; };
  }
  if (kind == "sine") {
    const double offset = number_or(j, "offset", 1.0, field);
    const double amplitude = number_or(j, "amplitude", 0.5, field);
    const double frequency = number_or(j, "frequency", 1.0, field);
    return [=](double t) { return offset + amplitude * std::sin(2.0 * std::numbers::pi * frequency * t); };
  }
  config_error(field, "unknown modulation type '" + kind + "'");
}

}  // namespace

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j, std::string_view field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  config_error(field, "expected [re, im] or a number");
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, std::string_view field) {
  if (!j.is_array() || j.empty()) config_error(field, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != n) {
      config_error(field, "row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (std::size_t k = 0; k < n; ++k) {
      m(i, k) = complex_from_json(row[k], std::string(field) + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  if (!m.all_finite()) config_error(field, "entries must be finite");
  return m;
}

GeneratorSpec generator_from_json(const Json& j) {
  if (!j.is_object()) config_error("generator", "expected an object");
  const std::string id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "generator";
  const double horizon = number_or(j, "horizon", 1.0, "generator");
  const Json& kind_j = require(j, "kind", "generator");
  if (!kind_j.is_string()) config_error("generator.kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  const Json params = j.contains("params") ? j["params"] : Json::object();

  GeneratorSpec g;
  try {
    if (kind == "zero") {
      const Json& dim = require(j, "dim", "generator");
      if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) config_error("generator.dim", "expected a positive integer");
      g = zero_generator(dim.get<std::size_t>(), horizon);
    } else if (kind == "constant") {
      g = constant_generator(id, matrix_from_json(require(params, "matrix", "generator.params"), "generator.params.matrix"),
                             horizon);
    } else if (kind == "modulated") {
      g = modulated_generator(id, matrix_from_json(require(params, "matrix", "generator.params"), "generator.params.matrix"),
                              modulation_from_json(require(params, "modulation", "generator.params"),
                                                   "generator.params.modulation"),
                              horizon);
    } else if (kind == "affine") {
      g = affine_generator(id, matrix_from_json(require(params, "matrix0", "generator.params"), "generator.params.matrix0"),
                           matrix_from_json(require(params, "matrix1", "generator.params"), "generator.params.matrix1"),
                           horizon);
    } else if (kind == "advection" || kind == "diffusion" || kind == "advection_tdep") {
      const Json& n = require(params, "n", "generator.params");
      if (!n.is_number_unsigned()) config_error("generator.params.n", "expected a non-negative integer");
      FamilyParams fp;
      fp.speed = number_or(params, "speed", fp.speed, "generator.params");
      fp.viscosity = number_or(params, "viscosity", fp.viscosity, "generator.params");
      g = build(family_kind_from_string(kind), n.get<std::size_t>(), fp, horizon);
    } else if (kind == "table") {
      const Json& samples = require(params, "samples", "generator.params");
      if (!samples.is_array()) config_error("generator.params.samples", "expected an array");
      std::vector<std::pair<double, ComplexMatrix>> table;
      for (std::size_t k = 0; k < samples.size(); ++k) {
        const std::string field = "generator.params.samples[" + std::to_string(k) + "]";
        table.emplace_back(number(require(samples[k], "t", field), field + ".t"),
                           matrix_from_json(require(samples[k], "matrix", field), field + ".matrix"));
      }
      g = table_generator(id, std::move(table), horizon);
    } else {
      config_error("generator.kind", "unknown kind '" + kind + "'");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    throw Error(ErrorKind::ConfigError, std::string("generator: ") + e.what());
  }
  if (kind != "zero") g.id = id;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() != g.dim) {
      config_error("generator.dim", "does not match the generator size " + std::to_string(g.dim));
    }
  }
  return g;
}

Json generator_to_table_json(const GeneratorSpec& g, std::span<const double> times) {
  Json samples = Json::array();
  for (double t : times) samples.push_back({{"t", t}, {"matrix", matrix_to_json(g.eval(t))}});
  return {{"id", g.id}, {"dim", g.dim}, {"horizon", g.horizon}, {"kind", "table"}, {"params", {{"samples", samples}}}};
}

Json log_representation_to_json(const LogRepresentation& rep) {
  Json grid = Json::array();
  Json mats = Json::array();
  for (const auto& e : rep.entries) {
    grid.push_back(Json::array({e.t, e.s}));
    mats.push_back(matrix_to_json(e.a));
  }
  return {{"kappa", complex_to_json(rep.kappa)}, {"generator_id", rep.generator_id}, {"grid", grid}, {"a_matrices", mats}};
}

Json parse_json_text(const std::string& text, std::string_view source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << col << ": " << e.what();
    throw Error(ErrorKind::ConfigError, msg.str());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw Error(ErrorKind::IoError, "failed writing '" + path.string() + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace opcalc
