// specbasis: run coefficient, error, table, aliasing and grid experiments and
// write CSV or JSON artifacts.
//
//   specbasis coeffs   --config configs/fig2.json --out out/
//   specbasis errors   --preset exemplar --basis chebyshev --N 16,32,64
//   specbasis tables   --config configs/tables.json
//   specbasis aliasing --config configs/aliasing_power.json
//   specbasis grids    --N 8 --grid lobatto --format json
//
// Exit codes: 0 ok, 2 usage or configuration error, 3 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specbasis/io.hpp"
#include "specbasis/specbasis.hpp"

namespace fs = std::filesystem;
using namespace specbasis;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string config;
  std::string out;
  std::string preset;
  std::string ns;
  std::string bases;
  std::string methods;
  std::string grid;
  std::optional<double> weight;
  std::optional<std::size_t> n_col;
  std::optional<double> interior;
  std::string format;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ExperimentConfig resolve(const Overrides& o) {
  nlohmann::json j = nlohmann::json::object();
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot read config '" + o.config + "'");
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("malformed config '" + o.config + "': " + e.what());
    }
  }
  // Flags override manifest fields.
  if (!o.out.empty()) j["out"] = o.out;
  if (!o.preset.empty()) j["function"] = o.preset;
  if (!o.ns.empty()) {
    std::vector<std::size_t> ns;
    for (const auto& s : split_list(o.ns)) {
      try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size() || v < 1) throw std::invalid_argument(s);
        ns.push_back(static_cast<std::size_t>(v));
      } catch (const std::exception&) {
        throw ConfigError("bad N value '" + s + "'");
      }
    }
    j["N"] = ns;
  }
  if (!o.bases.empty()) j["basis"] = split_list(o.bases);
  if (!o.methods.empty()) j["method"] = split_list(o.methods);
  if (!o.grid.empty()) j["grid"] = o.grid;
  if (o.weight) j["weight"] = *o.weight;
  if (o.n_col) j["ncol"] = *o.n_col;
  if (o.interior) j["interior"] = *o.interior;
  if (!o.format.empty()) j["format"] = o.format;
  auto cfg = parse_config(j);
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec || !fs::is_directory(cfg.out_dir)) throw ConfigError("cannot create output directory '" + cfg.out_dir.string() + "'");
  return cfg;
}

std::string stem(const Basis& b, Method m) { return b.name() + "_" + method_name(m); }

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
}

bool applicable(const Basis& b, Method m) {
  if (b.kind == BasisKind::Gegenbauer && m != Method::Truncation) return false;
  return m != Method::LagrangeLS || b.kind == BasisKind::Chebyshev;
}

Approximant build(const ExperimentConfig& c, const SingularFunction& f, const Basis& b, Method m, std::size_t n) {
  return approximate(f, b, m, n, c.grid, c.n_col, c.weight, c.m_ref_factor * n);
}

// ---------------------------------------------------------------- verbs

void cmd_coeffs(const ExperimentConfig& c) {
  const auto f = c.function.make();
  for (const auto& b : c.bases) {
    for (Method m : c.methods) {
      if (!applicable(b, m)) {
        std::cerr << "skipping " << stem(b, m) << ": method does not apply to this basis\n";
        continue;
      }
      const auto approx = parallel_map(c.ns, [&](std::size_t n) { return build(c, f, b, m, n); });
      for (std::size_t i = 0; i < c.ns.size(); ++i) {
        const auto name = "coeffs_" + stem(b, m) + "_N" + std::to_string(c.ns[i]);
        if (c.format == "json") {
          write_json(c.out_dir / (name + ".json"), to_json(approx[i]));
          continue;
        }
        CsvWriter w(c.out_dir / (name + ".csv"), {"n", "value", "abs_value"});
        const auto v = approx[i].coeffs().values();
        for (std::size_t n = 0; n < v.size(); ++n) w.row(n, v[n], std::abs(v[n]));
      }
    }
  }
}

std::optional<double> try_slope(const std::vector<double>& x, const std::vector<double>& y) {
  try {
    return fit_slope(x, y);
  } catch (const WindowError&) {
    return std::nullopt;
  }
}

void cmd_errors(const ExperimentConfig& c) {
  const auto f = c.function.make();
  std::vector<double> xs(c.ns.begin(), c.ns.end());
  nlohmann::json summary = nlohmann::json::array();
  CsvWriter slopes(c.out_dir / "error_slopes.csv", {"basis", "method", "slope_full", "slope_interior"});
  for (const auto& b : c.bases) {
    for (Method m : c.methods) {
      if (!applicable(b, m)) {
        std::cerr << "skipping " << stem(b, m) << ": method does not apply to this basis\n";
        continue;
      }
      const auto reports = parallel_map(c.ns, [&](std::size_t n) {
        return error_report(f, build(c, f, b, m, n), c.interior);
      });
      std::vector<double> full, interior;
      for (const auto& r : reports) {
        full.push_back(r.linf_full);
        interior.push_back(r.linf_interior);
      }
      const auto sf = try_slope(xs, full);
      const auto si = try_slope(xs, interior);
      const auto fmt = [](std::optional<double> v) { return v ? format_number(*v) : std::string("nan"); };
      slopes.row(b.name(), method_name(m), fmt(sf), fmt(si));

      if (c.format == "json") {
        nlohmann::json entry{{"basis", b.name()}, {"method", method_name(m)}, {"reports", nlohmann::json::array()}};
        for (const auto& r : reports) entry["reports"].push_back(to_json(r));
        if (sf) entry["slope_full"] = *sf;
        if (si) entry["slope_interior"] = *si;
        summary.push_back(entry);
        continue;
      }
      CsvWriter w(c.out_dir / ("errors_" + stem(b, m) + ".csv"), {"N", "linf_full", "linf_interior"});
      for (const auto& r : reports) w.row(r.n, r.linf_full, r.linf_interior);
      for (const auto& r : reports) {
        CsvWriter wx(c.out_dir / ("errx_" + stem(b, m) + "_N" + std::to_string(r.n) + ".csv"), {"x", "abs_error"});
        for (const auto& s : r.samples) wx.row(s.x, s.error);
      }
    }
  }
  if (c.format == "json") write_json(c.out_dir / "errors.json", summary);
}

void cmd_tables(const ExperimentConfig& c) {
  const auto f = c.function.make();
  for (const auto& t : c.tables) {
    if (t == "ratio") {
      const auto rows = ratio_table(f, 100, c.n_col);
      CsvWriter w(c.out_dir / "table_coeff_ratios.csv", {"n", "b^I_n/b_n", "b^LS_n/b_n"});
      for (const auto& r : rows) w.row(r.n, r.interp_ratio, r.ls_ratio);
    } else if (t == "error_ratio") {
      const auto rows = error_ratio_table(f, c.ns, c.n_col);
      CsvWriter w(c.out_dir / "table_error_ratios.csv", {"N", "E^interp_N/E_N", "E^LS_N/E_N"});
      for (const auto& r : rows) w.row(r.n, r.interp_ratio, r.ls_ratio);
    } else {
      throw ConfigError("unknown table '" + t + "' (expected ratio or error_ratio)");
    }
  }
}

// Series whose aliasing is examined: the configured function's reference
// coefficients, a_n = n^-k, a single T_{3N/2}, or a series with no modes >= N.
CoefficientVector aliasing_series(const ExperimentConfig& c, const SingularFunction& f, std::size_t n) {
  const std::size_t len = 8 * n;
  std::vector<double> a(len, 0.0);
  const auto& kind = c.aliasing.kind;
  if (kind == "function") return reference_coeffs(f, Basis::chebyshev(), len, 4 * len);
  if (kind == "power") {
    for (std::size_t m = 1; m < len; ++m) a[m] = std::pow(static_cast<double>(m), -c.aliasing.k);
  } else if (kind == "single") {
    if (n % 2 != 0) throw ConfigError("aliasing kind 'single' needs even N");
    a[3 * n / 2] = 1.0;
  } else {
    for (std::size_t m = 0; m < n; ++m) a[m] = 1.0 / static_cast<double>((m + 1) * (m + 1));
  }
  return {Basis::chebyshev(), a};
}

void cmd_aliasing(const ExperimentConfig& c) {
  const auto f = c.function.make();
  for (std::size_t n : c.ns) {
    const auto a = aliasing_series(c, f, n);
    const auto interp = interpolate_series(a, n);
    CsvWriter w(c.out_dir / ("aliasing_" + c.aliasing.kind + "_N" + std::to_string(n) + ".csv"),
                {"n", "a_n", "aI_n", "predicted_E_n", "measured_E_n", "relative_bound", "tail_warning"});
    for (std::size_t i = 0; i < n; ++i) {
      const auto pred = aliasing_error(a, n, i);
      const double bound = aliasing_power_law(std::max(2.0, c.aliasing.k), i, n, 1.0).relative_bound;
      w.row(i, a[i], interp[i], pred.value, interp[i] - a[i], bound, pred.tail_warning);
    }
  }
}

void cmd_grids(const ExperimentConfig& c) {
  nlohmann::json all = nlohmann::json::object();
  for (std::size_t n : c.ns) {
    const auto g = make_grid(c.grid, n);
    if (c.format == "json") {
      all[std::to_string(n)] = g.nodes;
      continue;
    }
    CsvWriter w(c.out_dir / ("grid_" + grid_name(c.grid) + "_N" + std::to_string(n) + ".csv"), {"k", "x"});
    for (std::size_t k = 0; k < g.size(); ++k) w.row(k + 1, g.nodes[k]);
  }
  if (c.format == "json") write_json(c.out_dir / ("grids_" + grid_name(c.grid) + ".json"), all);
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON experiment manifest");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--preset", o.preset, "function preset (exemplar, quadratic, power52)");
  sub->add_option("--N", o.ns, "comma-separated basis counts, strictly increasing");
  sub->add_option("--basis", o.bases, "comma-separated bases (chebyshev, difference, quadfactor, gegenbauerM)");
  sub->add_option("--method", o.methods, "comma-separated methods (truncation, interpolation, leastsquares, lagrange)");
  sub->add_option("--grid", o.grid, "roots or lobatto");
  sub->add_option("--weight", o.weight, "inner-product weight exponent (-2.5, -1.5, -0.5, 0)");
  sub->add_option("--ncol", o.n_col, "quadrature nodes for least squares");
  sub->add_option("--interior", o.interior, "half-width of the interior error window");
  sub->add_option("--format", o.format, "csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chebyshev, difference and quad-factor approximation experiments"};
  app.require_subcommand(1);
  Overrides o;
  struct Verb {
    const char* name;
    const char* help;
    void (*run)(const ExperimentConfig&);
  };
  const Verb verbs[] = {
      {"coeffs", "coefficient files per basis and method", cmd_coeffs},
      {"errors", "error-vs-x curves and error-norm sweeps", cmd_errors},
      {"tables", "coefficient and error ratio tables", cmd_tables},
      {"aliasing", "predicted versus measured aliasing errors", cmd_aliasing},
      {"grids", "roots or Lobatto node sets", cmd_grids},
  };
  for (const auto& v : verbs) add_common(app.add_subcommand(v.name, v.help), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto cfg = resolve(o);
    for (const auto& v : verbs) {
      if (app.got_subcommand(v.name)) v.run(cfg);
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
