#pragma once

// Flat key-value experiment configs:
//
//   [grid]
//   n = 1
//   L_x = 16
//   ; comments start with ';'
//
// Every value read through Config is recorded, so the report can embed the
// resolved configuration including any defaults that were filled in.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fracheat::cli {

/// The config does not match the schema of the experiment (exit status 2).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  static Config load(const std::filesystem::path& path);
  static Config parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;

  double number(const std::string& section, const std::string& key);
  double number(const std::string& section, const std::string& key, double fallback);
  long integer(const std::string& section, const std::string& key);
  long integer(const std::string& section, const std::string& key, long fallback);
  std::string text(const std::string& section, const std::string& key);
  std::string text(const std::string& section, const std::string& key, const std::string& fallback);
  /// Comma-separated numbers.
  std::vector<double> numbers(const std::string& section, const std::string& key);
  std::vector<double> numbers(const std::string& section, const std::string& key,
                              const std::vector<double>& fallback);

  /// text() restricted to a fixed set of choices.
  std::string choice(const std::string& section, const std::string& key, const std::vector<std::string>& options);
  std::string choice(const std::string& section, const std::string& key, const std::vector<std::string>& options,
                     const std::string& fallback);

  /// Throws SchemaError naming the first key that was never read.
  void reject_unused() const;

  /// Resolved values in the order they were read, grouped by section.
  const nlohmann::ordered_json& resolved() const { return resolved_; }

 private:
  std::optional<std::string> raw(const std::string& section, const std::string& key);
  void record(const std::string& section, const std::string& key, nlohmann::ordered_json value);

  std::map<std::string, std::map<std::string, std::string>> values_;
  std::set<std::string> used_;
  nlohmann::ordered_json resolved_ = nlohmann::ordered_json::object();
};

}  // namespace fracheat::cli
