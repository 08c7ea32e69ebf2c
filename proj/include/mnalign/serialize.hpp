#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mnalign/alignment.hpp"
#include "mnalign/eval.hpp"
#include "mnalign/factors.hpp"
#include "mnalign/matching.hpp"

namespace mna {

using nlohmann::json;

// Alignment <-> JSON array of k-length integer arrays.
json alignment_to_json(const Alignment& a);
Alignment alignment_from_json(const json& j);

// One tuple per row; header names the modes (mode_0, mode_1, ...).
void write_alignment_csv(const std::filesystem::path& path, const Alignment& a);

json metrics_to_json(const MetricsReport& m);
std::string metrics_to_csv(const MetricsReport& m);  // header + one row

// d_values keep their numeric entries; +inf becomes the string "inf".
json certificate_to_json(const BoundCertificate& c);

// Debugging bundle: manifest.json plus one CSV per factor matrix
// (column-major value order). Round-trips exactly.
void save_factor_set(const FactorSet& f, const std::filesystem::path& dir);
FactorSet load_factor_set(const std::filesystem::path& dir);

void write_json_file(const std::filesystem::path& path, const json& j);
json read_json_file(const std::filesystem::path& path);

// Shortest decimal form that round-trips a double exactly.
std::string format_double(double x);

}  // namespace mna
