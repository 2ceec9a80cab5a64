#include "qcayley/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcayley/error.hpp"

namespace qcayley {

namespace {

using nlohmann::json;

std::complex<double> parse_entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  if (e.is_object() && e.contains("re"))
    return {e.at("re").get<double>(), e.value("im", 0.0)};
  fail(ErrorCode::ConfigError, "matrix entry must be a number, [re, im] or {re, im}");
}

Eigen::MatrixXcd parse_matrix(const json& m) {
  if (!m.is_array() || m.empty()) fail(ErrorCode::ConfigError, "matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(m.size());
  if (!m[0].is_array()) fail(ErrorCode::ConfigError, "matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(m[0].size());
  Eigen::MatrixXcd Q(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      fail(ErrorCode::ConfigError, "matrix rows must have equal length");
    for (Eigen::Index j = 0; j < cols; ++j) Q(i, j) = parse_entry(row[static_cast<std::size_t>(j)]);
  }
  return Q;
}

FactorSpec factor_from_json(const json& f, int id) {
  if (!f.is_object()) fail(ErrorCode::ConfigError, "factor must be an object");
  const std::string kind = f.value("kind", "");
  try {
    if (kind == "cyclic") return FactorSpec::cyclic(f.value("order", 0), id);
    if (kind != "orthogonal" && kind != "unitary") fail(ErrorCode::ConfigError, "unknown factor kind '" + kind + "'");
    const bool orth = kind == "orthogonal";
    if (f.contains("q") && f.contains("matrix")) fail(ErrorCode::ConfigError, "factor gives both q and matrix");
    if (f.contains("q")) {
      double q = f.at("q").get<double>();
      return orth ? FactorSpec::orthogonal_q(q, id) : FactorSpec::unitary_q(q, id);
    }
    if (f.contains("matrix")) {
      Eigen::MatrixXcd Q = parse_matrix(f.at("matrix"));
      return orth ? FactorSpec::orthogonal(Q, id) : FactorSpec::unitary(Q, id);
    }
    fail(ErrorCode::ConfigError, kind + " factor needs q or matrix");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(ErrorCode::ConfigError, std::string("factor ") + std::to_string(id) + ": " + e.what());
  }
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  std::string s(value);
  std::istringstream is(s);
  T out{};
  is >> out;
  if (!is || !is.eof()) fail(ErrorCode::ConfigError, "bad value '" + s + "' for " + std::string(key));
  return out;
}

}  // namespace

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Dot: return "dot";
  }
  return "?";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "dot") return OutputFormat::Dot;
  fail(ErrorCode::ConfigError, "unknown output format '" + std::string(name) + "'");
}

void Config::validate() const {
  if (radius < 1) fail(ErrorCode::ConfigError, "radius must be at least 1");
  if (kmax < 1) fail(ErrorCode::ConfigError, "kmax must be at least 1");
  if (truncation_N < 1) fail(ErrorCode::ConfigError, "truncation_N must be at least 1");
  if (!(tol_product > 0.0) || !(tol_spectral > 0.0)) fail(ErrorCode::ConfigError, "tolerances must be positive");
  if (ambient_cap < 1 || vertex_cap < 1) fail(ErrorCode::ConfigError, "caps must be positive");
  if (sign && *sign != 1 && *sign != -1) fail(ErrorCode::ConfigError, "sign must be +1 or -1");
}

FactorSpec parse_factor(const std::string& factor_json, int factor_id) {
  try {
    return factor_from_json(json::parse(factor_json), factor_id);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("factor: ") + e.what());
  }
}

Config parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::ConfigError, "config must be a JSON object");
  Config cfg;
  try {
    if (j.contains("factors")) {
      int id = 0;
      for (const auto& f : j.at("factors")) cfg.factors.push_back(factor_from_json(f, id++));
    }
    if (j.contains("suite") && j.at("suite").get<std::string>() != "default")
      fail(ErrorCode::ConfigError, "unknown suite");
    cfg.radius = j.value("radius", cfg.radius);
    cfg.kmax = j.value("kmax", cfg.kmax);
    cfg.truncation_N = j.value("truncation_N", cfg.truncation_N);
    cfg.tol_product = j.value("tol_product", cfg.tol_product);
    cfg.tol_spectral = j.value("tol_spectral", cfg.tol_spectral);
    cfg.ambient_cap = j.value("ambient_cap", cfg.ambient_cap);
    cfg.vertex_cap = j.value("vertex_cap", cfg.vertex_cap);
    if (j.contains("sign")) cfg.sign = j.at("sign").get<int>();
    if (j.contains("output_format")) cfg.output_format = parse_output_format(j.at("output_format").get<std::string>());
    if (j.contains("edge_coefficients")) cfg.edge_coefficients = parse_edge_coefficients(j.at("edge_coefficients").dump());
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(ErrorCode::ConfigError, e.what());
  }
  cfg.validate();
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_override(Config& cfg, std::string_view key, std::string_view value) {
  if (key == "radius") cfg.radius = parse_number<int>(key, value);
  else if (key == "kmax") cfg.kmax = parse_number<int>(key, value);
  else if (key == "truncation_N") cfg.truncation_N = parse_number<int>(key, value);
  else if (key == "tol" || key == "tol_product") cfg.tol_product = parse_number<double>(key, value);
  else if (key == "tol_spectral") cfg.tol_spectral = parse_number<double>(key, value);
  else if (key == "ambient_cap") cfg.ambient_cap = parse_number<std::size_t>(key, value);
  else if (key == "vertex_cap") cfg.vertex_cap = parse_number<std::size_t>(key, value);
  else if (key == "sign") cfg.sign = parse_number<int>(key, value);
  else if (key == "format" || key == "output_format") cfg.output_format = parse_output_format(value);
  else fail(ErrorCode::ConfigError, "unknown config key '" + std::string(key) + "'");
  cfg.validate();
}

}  // namespace qcayley
