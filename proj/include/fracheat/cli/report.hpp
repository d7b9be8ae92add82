#pragma once

// JSON and CSV forms of the library's reports. JSON keeps the field names of
// the report structs in declaration order; CSV has one row per R-sample.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "fracheat/extension.hpp"
#include "fracheat/fractional.hpp"
#include "fracheat/uniqueness_lab.hpp"

namespace fracheat::cli {

using Json = nlohmann::ordered_json;

enum class ReportFormat { json, csv };

Json to_json(const Complex& z);
Json to_json(const MonotonicityReport& r);
Json to_json(const WindowReport& r);
Json to_json(const PropagationReport& r);
Json to_json(const IdentityReport& r);
Json to_json(const InequalityReport& r);
Json to_json(const OrderEstimate& r);
Json to_json(const DtNReport& r);  // without the lhs/rhs fields

/// Header "R,phi,F,phi_prime_fd,f1_rhs,violation"; violation is 0 or 1.
std::string monotonicity_csv(const MonotonicityReport& r);
/// Header "window,t_start,R,phi,F".
std::string propagation_csv(const PropagationReport& r, const std::vector<double>& R_samples);

/// {"experiment", "version", "config", "result"}.
Json envelope(const std::string& experiment, const Json& config, Json result);

void write_text(const std::filesystem::path& path, const std::string& text);
/// Two-space indented JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& j);

/// JSON wraps the report in envelope(); CSV writes monotonicity_csv.
void write_report(const MonotonicityReport& r, ReportFormat format, const std::filesystem::path& path,
                  const Json& config = Json::object());

}  // namespace fracheat::cli
