#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mutfreq {

#ifndef MUTFREQ_VERSION
#define MUTFREQ_VERSION "0.0.0"
#endif

inline const char* version_string() { return MUTFREQ_VERSION; }

inline std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// shortest representation that round-trips a double, stable across runs
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV with '#'-prefixed provenance comments before the header row.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::uint64_t config_hash,
            const std::string& seed_text)
      : out_(path) {
    if (!out_)
      throw std::runtime_error("CsvWriter: cannot open " + path);
    char line[128];
    std::snprintf(line, sizeof line, "# mutfreq %s\n", version_string());
    out_ << line;
    std::snprintf(line, sizeof line, "# config_hash=%016llx\n",
                  static_cast<unsigned long long>(config_hash));
    out_ << line;
    out_ << "# seed=" << seed_text << "\n";
  }

  void header(const std::vector<std::string>& names) { row(names); }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << fields[i];
    }
    out_ << '\n';
  }

  void close() { out_.close(); }

 private:
  std::ofstream out_;
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return static_cast<int>(i);
    return -1;
  }
};

// Reads a CSV written by CsvWriter (comments skipped, header row required,
// all cells numeric).
inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!have_header) {
      table.columns = cells;
      have_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("read_csv: non-numeric cell '" + cell +
                                 "' in " + path);
      }
    }
    if (row.size() != table.columns.size())
      throw std::runtime_error("read_csv: ragged row in " + path);
    table.rows.push_back(std::move(row));
  }
  if (!have_header)
    throw std::runtime_error("read_csv: no header row in " + path);
  return table;
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
  out << content;
}

}  // namespace mutfreq
