#include "fracheat/cli/report.hpp"

#include <fstream>
#include <sstream>

#include "fracheat/errors.hpp"
#include "fracheat/io.hpp"

namespace fracheat::cli {

namespace {

template <class T>
Json array_of(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(static_cast<T>(x));
  return a;
}

Json bools(const std::vector<bool>& v) {
  Json a = Json::array();
  for (bool b : v) a.push_back(b);
  return a;
}

}  // namespace

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const MonotonicityReport& r) {
  Json j;
  j["R"] = array_of(r.R);
  j["phi"] = array_of(r.phi);
  j["F"] = array_of(r.F);
  j["phi_prime_fd"] = array_of(r.phi_prime_fd);
  j["inequality_rhs"] = array_of(r.inequality_rhs);
  j["F_increase"] = bools(r.F_increase);
  j["inequality_violation"] = bools(r.inequality_violation);
  j["violation"] = bools(r.violation);
  j["underresolved"] = bools(r.underresolved);
  j["phi0"] = r.phi0;
  j["F0"] = r.F0;
  j["endpoint_chain"] = r.endpoint_chain;
  j["smallness_value"] = r.smallness_value;
  j["smallness_holds"] = r.smallness_holds;
  j["tolerance"] = r.tolerance;
  j["verdict"] = r.verdict;
  return j;
}

Json to_json(const WindowReport& r) {
  Json j;
  j["index"] = r.index;
  j["t_start"] = r.t_start;
  j["phi"] = array_of(r.phi);
  j["F"] = array_of(r.F);
  j["phi0"] = r.phi0;
  j["sup_phi"] = r.sup_phi;
  j["monotone"] = r.monotone;
  j["endpoint_extrapolated"] = r.endpoint_extrapolated;
  j["endpoint_direct"] = r.endpoint_direct;
  j["endpoint_relative_gap"] = r.endpoint_relative_gap;
  j["probe_max"] = r.probe_max;
  return j;
}

Json to_json(const PropagationReport& r) {
  Json j;
  j["zero_data"] = r.zero_data;
  j["scale"] = r.scale;
  j["phi_tolerance"] = r.phi_tolerance;
  j["probe_tolerance"] = r.probe_tolerance;
  j["windows"] = Json::array();
  for (const auto& w : r.windows) j["windows"].push_back(to_json(w));
  j["smallness_value"] = r.smallness_value;
  j["smallness_holds"] = r.smallness_holds;
  j["verdict"] = r.verdict;
  return j;
}

Json to_json(const IdentityReport& r) {
  Json j;
  j["R"] = r.R;
  j["phi"] = r.phi;
  j["phi_prime_fd"] = r.phi_prime_fd;
  j["gradient_term"] = r.gradient_term;
  j["boundary_term"] = r.boundary_term;
  j["rhs"] = r.rhs;
  j["relative_mismatch"] = r.relative_mismatch;
  j["boundary_residual"] = r.boundary_residual;
  j["residual_bound"] = r.residual_bound;
  j["meaningful"] = r.meaningful;
  return j;
}

Json to_json(const InequalityReport& r) {
  Json j;
  j["R"] = r.R;
  j["lhs"] = r.lhs;
  j["phi"] = r.phi;
  j["gradient_energy"] = r.gradient_energy;
  j["empirical_C1"] = r.empirical_C1;
  j["configured_C1"] = r.configured_C1;
  j["configured_suffices"] = r.configured_suffices;
  j["smallness_value"] = r.smallness_value;
  j["smallness_holds"] = r.smallness_holds;
  return j;
}

Json to_json(const OrderEstimate& r) {
  Json j;
  j["radii"] = array_of(r.radii);
  j["sups"] = array_of(r.sups);
  j["slope"] = r.slope;  // infinite slopes serialize as null
  j["intercept"] = r.intercept;
  j["used"] = r.used;
  j["identically_zero"] = r.identically_zero;
  j["status"] = r.status;
  return j;
}

Json to_json(const DtNReport& r) {
  Json j;
  j["s"] = r.s;
  j["discrepancy"] = r.discrepancy;
  j["lhs_norm"] = r.lhs_norm;
  j["rhs_norm"] = r.rhs_norm;
  j["worst_mode"] = r.worst_mode;
  j["worst_lambda"] = to_json(r.worst_lambda);
  j["worst_mode_error"] = r.worst_mode_error;
  return j;
}

std::string monotonicity_csv(const MonotonicityReport& r) {
  std::ostringstream out;
  out << "R,phi,F,phi_prime_fd,f1_rhs,violation\n";
  for (std::size_t k = 0; k < r.R.size(); ++k) {
    out << format_double(r.R[k]) << ',' << format_double(r.phi[k]) << ',' << format_double(r.F[k]) << ','
        << format_double(r.phi_prime_fd[k]) << ',' << format_double(r.inequality_rhs[k]) << ','
        << (r.violation[k] ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string propagation_csv(const PropagationReport& r, const std::vector<double>& R_samples) {
  std::ostringstream out;
  out << "window,t_start,R,phi,F\n";
  for (const auto& w : r.windows) {
    for (std::size_t k = 0; k < w.phi.size() && k < R_samples.size(); ++k) {
      out << w.index << ',' << format_double(w.t_start) << ',' << format_double(R_samples[k]) << ','
          << format_double(w.phi[k]) << ',' << format_double(w.F[k]) << '\n';
    }
  }
  return out.str();
}

Json envelope(const std::string& experiment, const Json& config, Json result) {
  Json j;
  j["experiment"] = experiment;
  j["version"] = FRACHEAT_VERSION;
  j["config"] = config;
  j["result"] = std::move(result);
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

void write_report(const MonotonicityReport& r, ReportFormat format, const std::filesystem::path& path,
                  const Json& config) {
  if (format == ReportFormat::json) {
    write_json(path, envelope("monotonicity", config, to_json(r)));
  } else {
    write_text(path, monotonicity_csv(r));
  }
}

}  // namespace fracheat::cli
