#pragma once

// Experiment manifests (JSON), versioned CSV output, and JSON serialization
// of approximants. Needs nlohmann/json (vendored as json.hpp).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "specbasis/analysis.hpp"

namespace specbasis {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader = "# specbasis-csv v1";

// Shortest-safe decimal form, identical on every run.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_number(std::size_t v) { return std::to_string(v); }

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns) : out_(path) {
    if (!out_) throw ConfigError("cannot open '" + path.string() + "' for writing");
    out_ << kCsvHeader << '\n';
    write_row(columns);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  template <class... Ts>
  void row(const Ts&... cells) {
    write_row({cell(cells)...});
  }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(std::size_t v) { return format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }

  std::ofstream out_;
};

struct FunctionSpec {
  std::string preset;  // empty when given inline
  std::vector<double> g_cheb;
  double phi = 0.0;
  int vartheta = 0;

  SingularFunction make() const {
    if (!preset.empty()) return make_preset(preset);
    return {g_cheb, phi, vartheta, "inline"};
  }
};

struct AliasingSpec {
  std::string kind = "function";  // function | power | single | zerotail
  double k = 4.0;                 // power-law exponent for kind = power
};

struct ExperimentConfig {
  FunctionSpec function{"exemplar", {}, 0.0, 0};
  std::vector<Basis> bases{Basis::chebyshev(), Basis::difference(), Basis::quad_factor()};
  std::vector<Method> methods{Method::Truncation};
  std::vector<std::size_t> ns{16, 32, 64, 128, 256};
  GridKind grid = GridKind::Roots;
  std::size_t n_col = 2048;
  WeightSpec weight = WeightSpec::chebyshev();
  double interior = kInteriorDefault;
  std::size_t m_ref_factor = 16;
  std::filesystem::path out_dir = "out";
  std::string format = "csv";
  std::uint64_t seed = 1;
  AliasingSpec aliasing;
  std::vector<std::string> tables{"ratio", "error_ratio"};

  void validate() const {
    if (function.preset.empty()) {
      if (function.g_cheb.empty()) throw ConfigError("inline function needs g_cheb");
    } else {
      const auto names = preset_names();
      if (std::find(names.begin(), names.end(), function.preset) == names.end()) {
        throw ConfigError("unknown preset '" + function.preset + "'");
      }
    }
    if (ns.empty()) throw ConfigError("N list is empty");
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (ns[i] < 1) throw ConfigError("N values must be >= 1");
      if (i > 0 && ns[i] <= ns[i - 1]) throw ConfigError("N list must be strictly increasing");
    }
    if (bases.empty()) throw ConfigError("basis list is empty");
    if (methods.empty()) throw ConfigError("method list is empty");
    if (n_col < 1) throw ConfigError("ncol must be >= 1");
    if (!(interior > 0.0 && interior <= 1.0)) throw ConfigError("interior window must lie in (0, 1]");
    if (m_ref_factor < 2) throw ConfigError("m_ref_factor must be >= 2");
    if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
    const auto& kinds = aliasing.kind;
    if (kinds != "function" && kinds != "power" && kinds != "single" && kinds != "zerotail") {
      throw ConfigError("aliasing kind must be function, power, single or zerotail");
    }
  }
};

namespace detail {

template <class T>
T json_get(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  try {
    if (j.contains("function")) {
      const auto& fj = j["function"];
      if (fj.is_string()) {
        c.function = {fj.get<std::string>(), {}, 0.0, 0};
      } else if (fj.is_object()) {
        c.function.preset.clear();
        c.function.g_cheb = detail::json_get<std::vector<double>>(fj, "g_cheb");
        c.function.phi = detail::json_get<double>(fj, "phi");
        c.function.vartheta = fj.value("vartheta", 0);
        c.function.make();  // surfaces invalid parameters as a config error below
      } else {
        throw ConfigError("function must be a preset name or an object");
      }
    }
    if (j.contains("basis")) {
      c.bases.clear();
      for (const auto& b : j["basis"]) c.bases.push_back(parse_basis(b.get<std::string>()));
    }
    if (j.contains("method")) {
      c.methods.clear();
      for (const auto& m : j["method"]) c.methods.push_back(parse_method(m.get<std::string>()));
    }
    if (j.contains("N")) c.ns = detail::json_get<std::vector<std::size_t>>(j, "N");
    if (j.contains("grid")) c.grid = parse_grid(detail::json_get<std::string>(j, "grid"));
    if (j.contains("ncol")) c.n_col = detail::json_get<std::size_t>(j, "ncol");
    if (j.contains("weight")) c.weight = WeightSpec::make(detail::json_get<double>(j, "weight"));
    if (j.contains("interior")) c.interior = detail::json_get<double>(j, "interior");
    if (j.contains("m_ref_factor")) c.m_ref_factor = detail::json_get<std::size_t>(j, "m_ref_factor");
    if (j.contains("out")) c.out_dir = detail::json_get<std::string>(j, "out");
    if (j.contains("format")) c.format = detail::json_get<std::string>(j, "format");
    if (j.contains("seed")) c.seed = detail::json_get<std::uint64_t>(j, "seed");
    if (j.contains("tables")) c.tables = detail::json_get<std::vector<std::string>>(j, "tables");
    if (j.contains("aliasing")) {
      const auto& aj = j["aliasing"];
      c.aliasing.kind = aj.value("kind", std::string("function"));
      c.aliasing.k = aj.value("k", 4.0);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  } catch (const std::exception& e) {
    // Basis/method/grid/weight/function parse failures.
    throw ConfigError(e.what());
  }
  c.validate();
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed config '" + path.string() + "': " + e.what());
  }
  return parse_config(j);
}

inline nlohmann::json to_json(const Approximant& a) {
  nlohmann::json meta;
  const auto& m = a.meta();
  meta["N"] = m.n_basis;
  if (m.grid) meta["grid"] = grid_name(*m.grid);
  if (m.grid_points) meta["grid_points"] = *m.grid_points;
  if (m.n_col) meta["N_col"] = *m.n_col;
  if (m.weight) meta["weight"] = m.weight->alpha;
  if (m.m_ref) meta["M_ref"] = *m.m_ref;
  if (m.condition) meta["condition"] = *m.condition;
  if (m.lambda) meta["lambda"] = *m.lambda;
  if (m.mu) meta["mu"] = *m.mu;
  const auto v = a.coeffs().values();
  return {{"basis", a.basis().name()},
          {"method", method_name(a.method())},
          {"meta", meta},
          {"coeffs", std::vector<double>(v.begin(), v.end())}};
}

inline nlohmann::json to_json(const ErrorReport& r) {
  nlohmann::json j{{"N", r.n}, {"linf_full", r.linf_full}, {"linf_interior", r.linf_interior},
                   {"interior", r.interior}};
  if (r.slope_fit) j["slope_fit"] = *r.slope_fit;
  return j;
}

}  // namespace specbasis
