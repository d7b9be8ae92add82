#include "fracheat/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fracheat::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  std::string out = s.substr(b, e - b + 1);
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::string qualified(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

double to_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw SchemaError("key '" + where + "': expected a number, got '" + s + "'");
  return v;
}

}  // namespace

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Config Config::parse(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw SchemaError(std::string("malformed config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  Config cfg;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      cfg.values_[""][name] = trim(node.data());
    } else {
      for (const auto& [key, leaf] : node) cfg.values_[name][key] = trim(leaf.data());
    }
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = values_.find(section);
  return s != values_.end() && s->second.count(key) > 0;
}

std::optional<std::string> Config::raw(const std::string& section, const std::string& key) {
  const auto s = values_.find(section);
  if (s == values_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  used_.insert(qualified(section, key));
  return k->second;
}

void Config::record(const std::string& section, const std::string& key, nlohmann::ordered_json value) {
  if (section.empty()) {
    resolved_[key] = std::move(value);
  } else {
    resolved_[section][key] = std::move(value);
  }
}

double Config::number(const std::string& section, const std::string& key) {
  const auto r = raw(section, key);
  if (!r) throw SchemaError("missing key '" + qualified(section, key) + "'");
  const double v = to_double(*r, qualified(section, key));
  record(section, key, v);
  return v;
}

double Config::number(const std::string& section, const std::string& key, double fallback) {
  if (!has(section, key)) {
    record(section, key, fallback);
    return fallback;
  }
  return number(section, key);
}

long Config::integer(const std::string& section, const std::string& key) {
  const auto r = raw(section, key);
  const auto where = qualified(section, key);
  if (!r) throw SchemaError("missing key '" + where + "'");
  long v = 0;
  const auto* end = r->data() + r->size();
  const auto [p, ec] = std::from_chars(r->data(), end, v);
  if (ec != std::errc() || p != end) throw SchemaError("key '" + where + "': expected an integer, got '" + *r + "'");
  record(section, key, v);
  return v;
}

long Config::integer(const std::string& section, const std::string& key, long fallback) {
  if (!has(section, key)) {
    record(section, key, fallback);
    return fallback;
  }
  return integer(section, key);
}

std::string Config::text(const std::string& section, const std::string& key) {
  const auto r = raw(section, key);
  if (!r) throw SchemaError("missing key '" + qualified(section, key) + "'");
  record(section, key, *r);
  return *r;
}

std::string Config::text(const std::string& section, const std::string& key, const std::string& fallback) {
  if (!has(section, key)) {
    record(section, key, fallback);
    return fallback;
  }
  return text(section, key);
}

std::vector<double> Config::numbers(const std::string& section, const std::string& key) {
  const auto r = raw(section, key);
  const auto where = qualified(section, key);
  if (!r) throw SchemaError("missing key '" + where + "'");
  std::vector<double> out;
  std::stringstream ss(*r);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto t = trim(item);
    if (t.empty()) throw SchemaError("key '" + where + "': empty list entry");
    out.push_back(to_double(t, where));
  }
  record(section, key, out);
  return out;
}

std::vector<double> Config::numbers(const std::string& section, const std::string& key,
                                    const std::vector<double>& fallback) {
  if (!has(section, key)) {
    record(section, key, fallback);
    return fallback;
  }
  return numbers(section, key);
}

std::string Config::choice(const std::string& section, const std::string& key,
                           const std::vector<std::string>& options) {
  auto v = text(section, key);
  for (const auto& o : options) {
    if (o == v) return v;
  }
  std::string msg = "key '" + qualified(section, key) + "': '" + v + "' is not one of";
  for (const auto& o : options) msg += " " + o;
  throw SchemaError(msg);
}

std::string Config::choice(const std::string& section, const std::string& key,
                           const std::vector<std::string>& options, const std::string& fallback) {
  if (!has(section, key)) {
    record(section, key, fallback);
    return fallback;
  }
  return choice(section, key, options);
}

void Config::reject_unused() const {
  for (const auto& [section, keys] : values_) {
    for (const auto& [key, value] : keys) {
      if (!used_.count(qualified(section, key))) {
        throw SchemaError("unknown key '" + qualified(section, key) + "'");
      }
    }
  }
}

}  // namespace fracheat::cli
