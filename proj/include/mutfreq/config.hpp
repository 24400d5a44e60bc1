#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mutfreq {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat sectioned key-value text:
//   [section]
//   key = value        # trailing comments allowed
// Keys are addressed as "section.key". Unknown keys are rejected when the
// consumer finishes, so typos fail loudly instead of silently defaulting.
class Config {
 public:
  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
  }

  static Config from_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw config_error("config: bad section header at line " +
                             std::to_string(lineno));
        section = trim(line.substr(1, line.size() - 2));
        if (section.empty())
          throw config_error("config: empty section name at line " +
                             std::to_string(lineno));
        continue;
      }
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw config_error("config: expected key = value at line " +
                           std::to_string(lineno));
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty() || section.empty())
        throw config_error("config: key outside a section at line " +
                           std::to_string(lineno));
      cfg.values_[section + "." + key] = value;
    }
    return cfg;
  }

  // command-line override "section.key=value"
  void set(const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || assignment.find('.') > eq)
      throw config_error("config: override must look like section.key=value");
    values_[trim(assignment.substr(0, eq))] = trim(assignment.substr(eq + 1));
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end())
      throw config_error("config: missing required key '" + key + "'");
    consumed_.insert(key);
    return it->second;
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    return has(key) ? get_string(key) : fallback;
  }

  double get_double(const std::string& key) {
    return parse_double(key, get_string(key));
  }
  double get_double(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
  }

  std::int64_t get_int(const std::string& key) {
    const std::string v = get_string(key);
    try {
      std::size_t pos = 0;
      const long long parsed = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return parsed;
    } catch (const std::exception&) {
      throw config_error("config: key '" + key + "' is not an integer: " + v);
    }
  }
  std::int64_t get_int(const std::string& key, std::int64_t fallback) {
    return has(key) ? get_int(key) : fallback;
  }

  bool get_bool(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("config: key '" + key + "' is not a boolean: " + v);
  }

  // every key must have been read by now
  void reject_unknown_keys() const {
    std::vector<std::string> unknown;
    for (const auto& [key, value] : values_)
      if (consumed_.count(key) == 0) unknown.push_back(key);
    if (!unknown.empty()) {
      std::string message = "config: unknown keys:";
      for (const auto& k : unknown) message += " " + k;
      throw config_error(message);
    }
  }

  // Canonical dump for provenance hashing. The worker count is execution
  // machinery, not part of the experiment, and results do not depend on it;
  // leaving it out keeps outputs byte-identical across worker counts.
  std::string canonical_text() const {
    std::string out;
    for (const auto& [key, value] : values_) {
      if (key == "run.threads") continue;
      out += key + "=" + value + "\n";
    }
    return out;
  }

 private:
  static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }

  double parse_double(const std::string& key, const std::string& v) {
    try {
      std::size_t pos = 0;
      const double parsed = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return parsed;
    } catch (const std::exception&) {
      throw config_error("config: key '" + key + "' is not a number: " + v);
    }
  }

  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
};

}  // namespace mutfreq
