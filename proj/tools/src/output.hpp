#ifndef SPINBATH_TOOLS_OUTPUT_HPP
#define SPINBATH_TOOLS_OUTPUT_HPP

#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

// Report assembly and serialization. Doubles are printed with
// std::to_chars shortest round-trip form: output is byte-stable for a given
// (version, config, seed) and independent of locale and thread count.

namespace spinbath_cli {

inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct CheckRow {
  std::string name;
  double measured;
  double tolerance;
  bool pass;
  std::string comment;  // optional
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<CheckRow> checks;
  std::vector<std::pair<std::string, double>> scalars;  // e.g. fit results

  void meta(const std::string& k, const std::string& v) { metadata.emplace_back(k, v); }
  void meta(const std::string& k, double v) { metadata.emplace_back(k, format_double(v)); }

  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::string to_csv() const {
    std::string out;
    out += "# spinbath " + std::string(SPINBATH_VERSION) + "\n";
    out += "# units: hbar = 1, k_B = 1, theta = k_B T / (hbar omega0); "
           "energy in hbar omega0, entropy and cv in k_B\n";
    out += "# command: " + command + "\n";
    for (const auto& [k, v] : metadata) out += "# " + k + ": " + v + "\n";
    for (const auto& [k, v] : scalars) out += "# " + k + ": " + format_double(v) + "\n";
    if (!checks.empty()) {
      out += "check,measured,tolerance,pass\n";
      for (const auto& c : checks) {
        out += c.name + "," + format_double(c.measured) + "," +
               format_double(c.tolerance) + "," + (c.pass ? "1" : "0") + "\n";
      }
    }
    if (!columns.empty()) {
      for (std::size_t i = 0; i < columns.size(); ++i)
        out += (i ? "," : "") + columns[i];
      out += "\n";
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
          out += (i ? "," : "") + format_double(row[i]);
        out += "\n";
      }
    }
    return out;
  }

  std::string to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["tool"] = "spinbath";
    j["version"] = SPINBATH_VERSION;
    j["units"] = {{"hbar", 1}, {"k_B", 1}, {"theta", "k_B T / (hbar omega0)"},
                  {"energy", "hbar omega0"}, {"entropy", "k_B"}, {"cv", "k_B"}};
    j["command"] = command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) cfg[k] = v;
    j["config"] = cfg;
    if (!scalars.empty()) {
      nlohmann::ordered_json s = nlohmann::ordered_json::object();
      for (const auto& [k, v] : scalars) s[k] = v;
      j["results"] = s;
    }
    if (!checks.empty()) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["measured"] = c.measured;
        e["tolerance"] = c.tolerance;
        e["pass"] = c.pass;
        if (!c.comment.empty()) e["comment"] = c.comment;
        arr.push_back(e);
      }
      j["checks"] = arr;
    }
    if (!columns.empty()) {
      j["columns"] = columns;
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& row : rows) arr.push_back(row);
      j["rows"] = arr;
    }
    return j.dump(2) + "\n";
  }

  int write(const std::string& path, const std::string& format) const {
    const std::string body = format == "json" ? to_json() : to_csv();
    if (path.empty() || path == "-") {
      std::cout << body;
      return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output file: " << path << "\n";
      return 2;
    }
    f << body;
    return 0;
  }
};

}  // namespace spinbath_cli

#endif
