#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace trdf_cli {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_int(long long v) { return std::to_string(v); }

void write_csv(const std::string& path, const Row& header, const std::vector<Row>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const Row& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_meta_sidecar(const std::string& path, const std::string& subcommand,
                        const nlohmann::json& parameters) {
  nlohmann::json meta;
  meta["tool"] = "trdf";
  meta["version"] = "0.1.0";
  meta["subcommand"] = subcommand;
  meta["parameters"] = parameters;
  write_json(path + ".meta.json", meta);
}

}  // namespace trdf_cli
