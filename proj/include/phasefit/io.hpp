#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasefit/forward.hpp"
#include "phasefit/irrs.hpp"
#include "phasefit/potential.hpp"

namespace phasefit {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// 64-bit FNV-1a, used for the config+seed fingerprint carried by every
/// output file.
std::uint64_t fnv1a(const std::string& data);
std::string fingerprint_hex(std::uint64_t fp);

/// Shift tables serialize as CSV with '#'-prefixed provenance lines followed
/// by the "l,delta" header. Keys "k" (always) and any extras given are
/// emitted in order.
std::string shifts_to_csv(const PhaseShiftSet& set,
                          const std::vector<std::pair<std::string, std::string>>& provenance);

struct ShiftFile {
  PhaseShiftSet shifts;
  std::map<std::string, std::string> provenance;
};

ShiftFile parse_shifts_csv(const std::string& text);

nlohmann::json potential_to_json(const PotentialConfig& p);
PotentialConfig potential_from_json(const nlohmann::json& j);

nlohmann::json shifts_to_json(const PhaseShiftSet& set);
PhaseShiftSet shifts_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const StabilityReport& report);

/// D-matrix CSV with header "k,h=<h1>,h=<h2>,..." and one row per k.
std::string d_matrix_to_csv(const std::vector<double>& ks, const std::vector<double>& hs,
                            const std::vector<std::vector<double>>& d,
                            const std::vector<std::pair<std::string, std::string>>& provenance);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace phasefit
