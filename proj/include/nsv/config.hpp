#pragma once

// key = value text configs.  '#' starts a comment; keys may repeat where a
// list makes sense (phi, level).

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nsv/error.hpp"

namespace nsv {

class Config {
 public:
  static Config parse(std::istream& is, const std::string& origin = "<config>") {
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw FormatError(origin + ":" + std::to_string(lineno) + ": expected key = value");
      }
      const std::string key = trim(line.substr(0, eq));
      if (key.empty()) throw FormatError(origin + ":" + std::to_string(lineno) + ": empty key");
      cfg.entries_.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return cfg;
  }

  static Config load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open config " + path);
    return parse(is, path);
  }

  bool has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
  }

  /// Last value given for key.
  std::string get(const std::string& key, const std::string& fallback) const {
    std::string v = fallback;
    for (const auto& [k, val] : entries_)
      if (k == key) v = val;
    return v;
  }

  std::vector<std::string> get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, val] : entries_)
      if (k == key) out.push_back(val);
    return out;
  }

  double get_double(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return convert<double>(key, get(key, ""));
  }

  long long get_int(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    return convert<long long>(key, get(key, ""));
  }

  bool get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get(key, "");
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw FormatError("key '" + key + "': expected a boolean, got '" + v + "'");
  }

  /// Throws on keys outside the allowed set, so typos do not pass silently.
  void require_known(const std::set<std::string>& allowed) const {
    for (const auto& [k, v] : entries_) {
      if (!allowed.count(k)) throw FormatError("unknown config key '" + k + "'");
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  template <class T>
  static T convert(const std::string& key, const std::string& v) {
    std::istringstream is(v);
    T out{};
    if (!(is >> out) || !(is >> std::ws).eof()) {
      throw FormatError("key '" + key + "': cannot parse '" + v + "'");
    }
    return out;
  }
};

}  // namespace nsv
