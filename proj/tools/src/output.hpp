#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace trdf_cli {

/// One CSV cell, already formatted.
using Row = std::vector<std::string>;

std::string fmt_real(double v);  // 17 significant digits, '.' decimal
std::string fmt_int(long long v);

/// UTF-8 CSV with a header row. Throws std::runtime_error naming the path on
/// I/O failure.
void write_csv(const std::string& path, const Row& header, const std::vector<Row>& rows);

/// JSON with sorted (stable) key order and a trailing newline.
void write_json(const std::string& path, const nlohmann::json& j);

/// Reproducibility sidecar <path>.meta.json: tool version, subcommand and the
/// fully resolved parameter set (including the seed).
void write_meta_sidecar(const std::string& path, const std::string& subcommand,
                        const nlohmann::json& parameters);

}  // namespace trdf_cli
