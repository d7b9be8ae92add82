#include "fracheat/cli/commands.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>

#include "fracheat/cli/config.hpp"
#include "fracheat/cli/report.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/extension.hpp"
#include "fracheat/fractional.hpp"
#include "fracheat/io.hpp"
#include "fracheat/kernels.hpp"
#include "fracheat/uniqueness_lab.hpp"

namespace fracheat::cli {

namespace fs = std::filesystem;

namespace {

constexpr double pi = std::numbers::pi;

// Turns library argument errors raised while resolving the config into schema errors.
template <class F>
auto schema_guard(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

std::size_t positive_size(Config& cfg, const std::string& section, const std::string& key) {
  const long v = cfg.integer(section, key);
  if (v <= 0) throw SchemaError("key '" + section + "." + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

std::size_t positive_size(Config& cfg, const std::string& section, const std::string& key, long fallback) {
  const long v = cfg.integer(section, key, fallback);
  if (v <= 0) throw SchemaError("key '" + section + "." + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

Point point_of(const std::vector<double>& v, int n, const std::string& key) {
  if (v.size() != static_cast<std::size_t>(n)) {
    throw SchemaError("key '" + key + "' needs " + std::to_string(n) + " coordinate(s)");
  }
  Point p{0.0, 0.0};
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
  return p;
}

double order_s(Config& cfg, const std::string& section) {
  const double s = cfg.number(section, "s");
  if (!(s > 0.0 && s < 1.0)) throw SchemaError("key '" + section + ".s' must lie in (0, 1)");
  return s;
}

SpaceTimeGrid read_grid(Config& cfg) {
  const long n = cfg.integer("grid", "n");
  const double L_x = cfg.number("grid", "L_x");
  const std::size_t N_x = positive_size(cfg, "grid", "N_x");
  const double L_t = cfg.number("grid", "L_t");
  const std::size_t N_t = positive_size(cfg, "grid", "N_t");
  const double t0 = cfg.number("grid", "t_origin");
  return schema_guard("grid", [&] { return make_grid(static_cast<int>(n), L_x, N_x, L_t, N_t, t0); });
}

// Boundary datum on a space-time grid.
FieldRule read_datum(Config& cfg, const SpaceTimeGrid& grid) {
  const auto kind = cfg.choice("datum", "kind", {"bump", "plane-wave", "power", "zero"});
  const int n = grid.dim();
  if (kind == "bump") {
    const double wx = cfg.number("datum", "width_x");
    const double wt = cfg.number("datum", "width_t");
    const double tc = cfg.number("datum", "center_t");
    const double A = cfg.number("datum", "amplitude", 1.0);
    if (!(wx > 0.0 && wt > 0.0)) throw SchemaError("datum widths must be positive");
    return [=](const Point& x, double t) {
      double r2 = x[0] * x[0];
      if (n == 2) r2 += x[1] * x[1];
      return Complex(A * std::exp(-r2 / wx - (t - tc) * (t - tc) / wt));
    };
  }
  if (kind == "plane-wave") {
    const Point k = point_of(cfg.numbers("datum", "k"), n, "datum.k");
    const long m = cfg.integer("datum", "m");
    const double L_x = grid.L_x(), L_t = grid.L_t();
    return [=](const Point& x, double t) {
      double phase = k[0] * x[0] / L_x + static_cast<double>(m) * t / L_t;
      if (n == 2) phase += k[1] * x[1] / L_x;
      return std::polar(1.0, 2.0 * pi * phase);
    };
  }
  if (kind == "power") {
    const long m = cfg.integer("datum", "m");
    const Point x0 = point_of(cfg.numbers("datum", "x0"), n, "datum.x0");
    if (m < 0) throw SchemaError("key 'datum.m' must be nonnegative");
    return [=](const Point& x, double) {
      double r2 = (x[0] - x0[0]) * (x[0] - x0[0]);
      if (n == 2) r2 += (x[1] - x0[1]) * (x[1] - x0[1]);
      return Complex(std::pow(r2, static_cast<double>(m)));
    };
  }
  return [](const Point&, double) { return Complex(0.0); };
}

BalakrishnanQuadrature read_quadrature(Config& cfg) {
  BalakrishnanQuadrature q;
  q.tau_split = cfg.number("balakrishnan", "tau_split", q.tau_split);
  q.panels = positive_size(cfg, "balakrishnan", "panels", static_cast<long>(q.panels));
  q.panel_growth = cfg.number("balakrishnan", "panel_growth", q.panel_growth);
  q.tail_eps = cfg.number("balakrishnan", "tail_eps", q.tail_eps);
  q.tolerance = cfg.number("balakrishnan", "tolerance", q.tolerance);
  return q;
}

struct ExtensionSetup {
  ExtensionParams params;
  YGrid ygrid;
  ExtendOptions options;
  double required_Y_max;
};

ExtensionSetup read_extension(Config& cfg, const SpaceTimeGrid& grid) {
  const double s = order_s(cfg, "extension");
  const auto params = ExtensionParams::from_s(s);
  const std::size_t J = positive_size(cfg, "extension", "J", 256);
  const double required = required_y_max(grid);
  const double Y_max = cfg.number("extension", "Y_max", required);
  ExtendOptions opts;
  const auto backend = cfg.choice("extension", "backend", {"finite-difference", "bessel-k"}, "finite-difference");
  opts.backend = backend == "bessel-k" ? ProfileBackend::bessel_k : ProfileBackend::finite_difference;
  opts.richardson_levels = static_cast<int>(cfg.integer("extension", "richardson_levels", opts.richardson_levels));
  YGrid yg = schema_guard("extension", [&] { return YGrid::for_weight(params.a, Y_max, J); });
  return {params, std::move(yg), opts, required};
}

// The thick-half-space scenario shared by monotonicity and propagate.
struct LabSetup {
  SpatialGrid spatial;
  YGrid ygrid;
  ExtensionParams params;
  SemigroupOptions semigroup;
  MonotonicityConfig mono;
  std::function<Complex(const Point&, double)> initial;
  double tolerance;
};

LabSetup read_lab(Config& cfg) {
  const long n = cfg.integer("spatial", "n");
  if (n != 1 && n != 2) throw SchemaError("key 'spatial.n' must be 1 or 2");
  SpatialGrid sg{static_cast<int>(n), cfg.number("spatial", "L_x"), positive_size(cfg, "spatial", "N_x")};
  schema_guard("spatial", [&] { return make_grid(sg.n, sg.L_x, sg.N_x, 1.0, 4, 0.0); });

  const double a = cfg.number("lab", "a");
  if (!(a > -1.0 && a < 1.0)) throw SchemaError("key 'lab.a' must lie in (-1, 1)");
  const double Y_max = cfg.number("ygrid", "Y_max");
  const std::size_t J = positive_size(cfg, "ygrid", "J");
  YGrid yg = schema_guard("ygrid", [&] { return YGrid::for_weight(a, Y_max, J); });

  SemigroupOptions so;
  so.mass_tol = cfg.number("semigroup", "mass_tol", so.mass_tol);
  so.inner_fraction = cfg.number("semigroup", "inner_fraction", so.inner_fraction);

  const double T = cfg.number("lab", "T");
  const double C1 = cfg.number("lab", "C1");
  HalfSpacePoint X0{point_of(cfg.numbers("lab", "x0"), sg.n, "lab.x0"), cfg.number("lab", "y0")};
  std::vector<double> R;
  if (cfg.has("lab", "R_samples")) {
    R = cfg.numbers("lab", "R_samples");
  } else {
    const std::size_t count = positive_size(cfg, "lab", "R_count", 24);
    R = schema_guard("lab", [&] { return chebyshev_R_samples(T, count); });
    cfg.numbers("lab", "R_samples", R);
  }
  auto mono = schema_guard("lab", [&] { return MonotonicityConfig::make(X0, T, C1, a, R); });
  const double tol = cfg.number("lab", "tolerance", 1e-3);

  const auto kind = cfg.choice("initial", "kind", {"bump", "zero"});
  std::function<Complex(const Point&, double)> init = [](const Point&, double) { return Complex(0.0); };
  if (kind == "bump") {
    const double w = cfg.number("initial", "width");
    const double A = cfg.number("initial", "amplitude", 1.0);
    const Point c = point_of(cfg.numbers("initial", "center_x", std::vector<double>(sg.n, 0.0)), sg.n,
                             "initial.center_x");
    if (!(w > 0.0)) throw SchemaError("key 'initial.width' must be positive");
    const int dim = sg.n;
    init = [=](const Point& x, double y) {
      double r2 = (x[0] - c[0]) * (x[0] - c[0]) + y * y;
      if (dim == 2) r2 += (x[1] - c[1]) * (x[1] - c[1]);
      return Complex(A * std::exp(-r2 / w));
    };
  }
  return {sg, std::move(yg), ExtensionParams::from_a(a), so, std::move(mono), std::move(init), tol};
}

using Runner = std::function<Json(Config&, const fs::path&)>;

Json run_hs_apply(Config& cfg, const fs::path& out) {
  const auto grid = read_grid(cfg);
  const auto rule = read_datum(cfg, grid);
  const double s = cfg.number("hs", "s");
  if (!(s > 0.0 && s <= 1.0)) throw SchemaError("key 'hs.s' must lie in (0, 1]");
  const auto method = cfg.choice("hs", "method", {"spectral", "balakrishnan"}, "spectral");
  BalakrishnanQuadrature quad;
  if (method == "balakrishnan") quad = read_quadrature(cfg);
  const long slice = cfg.integer("output", "slice_index", static_cast<long>(grid.N_t() / 2));
  if (slice < 0 || static_cast<std::size_t>(slice) >= grid.N_t()) throw SchemaError("key 'output.slice_index' out of range");
  cfg.reject_unused();

  const auto u = sample_field(grid, rule);
  Json r;
  r["method"] = method;
  r["s"] = s;
  GridFunction Hu = method == "spectral" ? apply_hs_spectral(u, s) : GridFunction(grid);
  if (method == "balakrishnan") {
    if (s == 1.0) throw InvalidArgument("hs-apply: the Balakrishnan route needs s < 1");
    auto res = apply_hs_balakrishnan(u, s, quad);
    Hu = std::move(res.value);
    r["error_estimate"] = res.error_estimate;
  }
  r["input_l2"] = l2_norm(u);
  r["output_l2"] = l2_norm(Hu);
  r["output_sup"] = sup_norm(Hu);
  r["sobolev2s_norm"] = sobolev2s_norm(u, s);
  write_grid_function(out / "hs-apply.fhl", Hu);
  write_time_slice_csv(out / "hs-apply-slice.csv", Hu, static_cast<std::size_t>(slice));
  r["files"] = Json::array({"hs-apply.fhl", "hs-apply-slice.csv"});
  return r;
}

Json run_hs_compare(Config& cfg, const fs::path&) {
  const auto grid = read_grid(cfg);
  const auto rule = read_datum(cfg, grid);
  const double s = order_s(cfg, "hs");
  const auto quad = read_quadrature(cfg);
  const double threshold = cfg.number("compare", "threshold", 1e-3);
  const double decay_tol = cfg.number("compare", "decay_tol", 1e-10);
  cfg.reject_unused();

  const auto u = sample_field(grid, rule);
  require_decay(u, decay_tol);
  const auto spectral = apply_hs_spectral(u, s);
  const auto bal = apply_hs_balakrishnan(u, s, quad);
  GridFunction diff(grid);
  for (std::size_t i = 0; i < diff.values().size(); ++i) diff.values()[i] = spectral.values()[i] - bal.value.values()[i];
  const double ref = l2_norm(spectral);
  const double err = ref > 0.0 ? l2_norm(diff) / ref : l2_norm(diff);
  Json r;
  r["s"] = s;
  r["relative_l2_error"] = err;
  r["error_estimate"] = bal.error_estimate;
  r["spectral_l2"] = ref;
  r["threshold"] = threshold;
  r["pass"] = err <= threshold;
  return r;
}

Json run_extend(Config& cfg, const fs::path& out) {
  const auto grid = read_grid(cfg);
  const auto rule = read_datum(cfg, grid);
  auto ext = read_extension(cfg, grid);
  cfg.reject_unused();

  const auto u = sample_field(grid, rule);
  const auto U = extend(u, ext.params, ext.ygrid, ext.options);
  double sup = 0.0;
  for (const auto& v : U.values()) sup = std::max(sup, std::abs(v));
  Json r;
  r["s"] = ext.params.s;
  r["a"] = ext.params.a;
  r["Y_max"] = ext.ygrid.Y_max();
  r["required_Y_max"] = ext.required_Y_max;
  r["J"] = ext.ygrid.J();
  r["gamma"] = ext.ygrid.gamma();
  r["sup_U"] = sup;
  r["sup_u"] = sup_norm(u);
  write_extended_field(out / "extend.fhx", U);
  r["files"] = Json::array({"extend.fhx"});
  return r;
}

Json run_dtn_verify(Config& cfg, const fs::path&) {
  const auto grid = read_grid(cfg);
  const auto rule = read_datum(cfg, grid);
  auto ext = read_extension(cfg, grid);
  const double threshold = cfg.number("dtn", "threshold", 1e-3);
  const double decay_tol = cfg.number("dtn", "decay_tol", 1e-10);
  cfg.reject_unused();

  const auto u = sample_field(grid, rule);
  require_decay(u, decay_tol);
  const auto rep = dtn_verify(u, ext.params.s, ext.ygrid, ext.options);
  Json r = to_json(rep);
  r["threshold"] = threshold;
  r["pass"] = rep.discrepancy <= threshold;
  return r;
}

Json run_kernel_table(Config& cfg, const fs::path& out) {
  const double a = cfg.number("kernel", "a");
  if (!(a > -1.0 && a < 1.0)) throw SchemaError("key 'kernel.a' must lie in (-1, 1)");
  const auto y1s = cfg.numbers("kernel", "y1");
  const auto ys = cfg.numbers("kernel", "y");
  const auto ts = cfg.numbers("kernel", "t");
  cfg.reject_unused();

  std::vector<KernelSample> rows;
  for (double t : ts) {
    for (double y1 : y1s) {
      for (double y : ys) rows.push_back({y1, y, t, a, bessel_heat_kernel(y1, y, t, a)});
    }
  }
  write_kernel_table_csv(out / "kernel-table.csv", rows);
  Json r;
  r["a"] = a;
  r["rows"] = rows.size();
  r["files"] = Json::array({"kernel-table.csv"});
  return r;
}

Json run_monotonicity(Config& cfg, const fs::path& out) {
  auto lab = read_lab(cfg);
  const std::size_t checks = static_cast<std::size_t>(cfg.integer("lab", "identity_checks", 0));
  if (checks > lab.mono.R_samples.size()) throw SchemaError("key 'lab.identity_checks' exceeds the sample count");
  cfg.reject_unused();

  const SemigroupEvolution U(sample_slice(lab.spatial, lab.ygrid, lab.initial), lab.params, lab.semigroup);
  const auto rep = monotonicity_scan(U, lab.mono, lab.tolerance);
  Json r;
  r["scan"] = to_json(rep);
  Json ids = Json::array();
  const std::size_t m = lab.mono.R_samples.size();
  for (std::size_t i = 0; i < checks; ++i) {
    // interior samples only, spread evenly
    const std::size_t k = 1 + (i * (m - 2)) / std::max<std::size_t>(checks, 1);
    ids.push_back(to_json(phi_derivative_check(U, {}, lab.mono, lab.mono.R_samples[k])));
  }
  r["identity"] = ids;
  write_text(out / "monotonicity.csv", monotonicity_csv(rep));
  r["files"] = Json::array({"monotonicity.csv"});
  return r;
}

Json run_vanish_order(Config& cfg, const fs::path&) {
  const auto grid = read_grid(cfg);
  const auto rule = read_datum(cfg, grid);
  const Point x0 = point_of(cfg.numbers("vanish", "x0"), grid.dim(), "vanish.x0");
  const double t0 = cfg.number("vanish", "t0");
  const auto radii = cfg.numbers("vanish", "radii");
  cfg.reject_unused();

  const auto u = sample_field(grid, rule);
  return to_json(vanishing_order(u, x0, t0, radii));
}

Json run_propagate(Config& cfg, const fs::path& out) {
  auto lab = read_lab(cfg);
  const std::size_t windows = positive_size(cfg, "propagation", "windows");
  const auto px = cfg.numbers("propagation", "probes_x", {});
  const auto py = cfg.numbers("propagation", "probes_y", {});
  const std::size_t n = static_cast<std::size_t>(lab.spatial.n);
  if (px.size() != n * py.size()) {
    throw SchemaError("keys 'propagation.probes_x' and 'propagation.probes_y' describe different probe counts");
  }
  cfg.reject_unused();

  PropagationScenario sc{sample_slice(lab.spatial, lab.ygrid, lab.initial), lab.params, windows, {}, lab.semigroup};
  for (std::size_t p = 0; p < py.size(); ++p) {
    Point x{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) x[i] = px[p * n + i];
    sc.probes.push_back(HalfSpacePoint{x, py[p]});
  }
  const auto rep = propagation_experiment(sc, lab.mono);
  write_text(out / "propagate.csv", propagation_csv(rep, lab.mono.R_samples));
  Json r = to_json(rep);
  r["files"] = Json::array({"propagate.csv"});
  return r;
}

const std::vector<std::pair<std::string, Runner>>& runners() {
  static const std::vector<std::pair<std::string, Runner>> table{
      {"hs-apply", run_hs_apply},         {"hs-compare", run_hs_compare},
      {"extend", run_extend},             {"dtn-verify", run_dtn_verify},
      {"kernel-table", run_kernel_table}, {"monotonicity", run_monotonicity},
      {"vanish-order", run_vanish_order}, {"propagate", run_propagate},
  };
  return table;
}

std::string error_type(const Error& e) {
  if (dynamic_cast<const QuadratureError*>(&e)) return "QuadratureError";
  if (dynamic_cast<const GridMismatch*>(&e)) return "GridMismatch";
  if (dynamic_cast<const NonFiniteValue*>(&e)) return "NonFiniteValue";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  return "Error";
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, run] : runners()) v.push_back(name);
    return v;
  }();
  return names;
}

int run_experiment(const std::string& experiment, const fs::path& config_path, const fs::path& out_dir,
                   std::ostream& log) {
  const Runner* runner = nullptr;
  for (const auto& [name, run] : runners()) {
    if (name == experiment) runner = &run;
  }
  if (!runner) {
    log << "fracheat: unknown experiment '" << experiment << "'\n";
    return exit_schema;
  }

  Config cfg;
  try {
    cfg = Config::load(config_path);
  } catch (const SchemaError& e) {
    log << "fracheat: " << e.what() << '\n';
    return exit_schema;
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    log << "fracheat: cannot create output directory " << out_dir.string() << ": " << ec.message() << '\n';
    return exit_io;
  }

  try {
    Json result = (*runner)(cfg, out_dir);
    write_json(out_dir / (experiment + ".json"), envelope(experiment, cfg.resolved(), std::move(result)));
    log << "fracheat: wrote " << (out_dir / (experiment + ".json")).string() << '\n';
    return exit_success;
  } catch (const SchemaError& e) {
    log << "fracheat: schema error: " << e.what() << '\n';
    return exit_schema;
  } catch (const IoError& e) {
    log << "fracheat: " << e.what() << '\n';
    return exit_io;
  } catch (const Error& e) {
    Json err;
    err["type"] = error_type(e);
    err["message"] = e.what();
    if (const auto* q = dynamic_cast<const QuadratureError*>(&e)) err["achieved"] = q->achieved();
    Json body;
    body["error"] = err;
    try {
      write_json(out_dir / "error.json", envelope(experiment, cfg.resolved(), body));
    } catch (const IoError& io) {
      log << "fracheat: " << io.what() << '\n';
    }
    log << "fracheat: numerical precondition failed: " << e.what() << '\n';
    return exit_numerical;
  }
}

}  // namespace fracheat::cli
