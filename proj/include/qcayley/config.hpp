#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcayley/kinf.hpp"
#include "qcayley/repring.hpp"

namespace qcayley {

enum class OutputFormat { Json, Csv, Dot };
const char* format_name(OutputFormat f);
OutputFormat parse_output_format(std::string_view name);

struct Config {
  std::vector<FactorSpec> factors;
  int radius = 4;
  int kmax = 30;
  int truncation_N = 400;
  double tol_product = 1e-10;
  double tol_spectral = 1e-8;
  std::size_t ambient_cap = 300000;
  std::size_t vertex_cap = 1000000;
  std::optional<int> sign;  // unset: natural sign per factor
  OutputFormat output_format = OutputFormat::Json;
  std::optional<EdgeCoefficients> edge_coefficients;

  void validate() const;
};

// ConfigError / ParseError on malformed input.
Config parse_config(std::string_view json_text);
Config load_config(const std::string& path);
// Flag-style override: radius, kmax, truncation_N, tol, tol_product, tol_spectral,
// ambient_cap, vertex_cap, sign, format, output_format.
void apply_override(Config& cfg, std::string_view key, std::string_view value);

FactorSpec parse_factor(const std::string& factor_json, int factor_id);

}  // namespace qcayley
