#include "phasefit/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "phasefit/errors.hpp"

namespace phasefit {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fingerprint_hex(std::uint64_t fp) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[fp & 0xf];
    fp >>= 4;
  }
  return s;
}

std::string shifts_to_csv(const PhaseShiftSet& set,
                          const std::vector<std::pair<std::string, std::string>>& provenance) {
  std::ostringstream out;
  out << "# k " << format_double(set.k) << "\n";
  for (const auto& [key, value] : provenance) out << "# " << key << " " << value << "\n";
  out << "l,delta\n";
  for (std::size_t l = 0; l < set.shifts.size(); ++l)
    out << l << "," << format_double(set.shifts[l]) << "\n";
  return out.str();
}

ShiftFile parse_shifts_csv(const std::string& text) {
  ShiftFile file;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string key, value;
      ls >> key;
      std::getline(ls, value);
      const auto pos = value.find_first_not_of(' ');
      file.provenance[key] = pos == std::string::npos ? "" : value.substr(pos);
      continue;
    }
    if (!header_seen) {
      if (line != "l,delta") throw ValidationError("shift csv: expected header 'l,delta'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError("shift csv: malformed row: " + line);
    int l = -1;
    auto r1 = std::from_chars(line.data(), line.data() + comma, l);
    double delta = 0.0;
    auto r2 = std::from_chars(line.data() + comma + 1, line.data() + line.size(), delta);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
        l != static_cast<int>(file.shifts.shifts.size()))
      throw ValidationError("shift csv: malformed row: " + line);
    file.shifts.shifts.push_back(delta);
  }
  if (!header_seen || file.shifts.shifts.empty())
    throw ValidationError("shift csv: no data rows");
  file.shifts.cutoff = static_cast<int>(file.shifts.shifts.size()) - 1;
  const auto it = file.provenance.find("k");
  if (it == file.provenance.end()) throw ValidationError("shift csv: missing '# k' line");
  file.shifts.k = std::stod(it->second);
  return file;
}

nlohmann::json potential_to_json(const PotentialConfig& p) {
  return nlohmann::json{{"radii", p.radii}, {"values", p.values}};
}

PotentialConfig potential_from_json(const nlohmann::json& j) {
  return make_potential(j.at("radii").get<std::vector<double>>(),
                        j.at("values").get<std::vector<double>>());
}

nlohmann::json shifts_to_json(const PhaseShiftSet& set) {
  return nlohmann::json{{"k", set.k}, {"cutoff", set.cutoff}, {"shifts", set.shifts}};
}

PhaseShiftSet shifts_from_json(const nlohmann::json& j) {
  PhaseShiftSet set;
  set.k = j.at("k").get<double>();
  set.shifts = j.at("shifts").get<std::vector<double>>();
  set.cutoff = j.value("cutoff", static_cast<int>(set.shifts.size()) - 1);
  if (set.shifts.empty() || set.cutoff != static_cast<int>(set.shifts.size()) - 1)
    throw ValidationError("shift json: inconsistent cutoff");
  return set;
}

nlohmann::json report_to_json(const StabilityReport& report) {
  nlohmann::json iters = nlohmann::json::array();
  for (const auto& rec : report.iterations) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : rec.s_min) {
      nlohmann::json entry = potential_to_json(m.config);
      entry["phi"] = m.value;
      members.push_back(std::move(entry));
    }
    iters.push_back(nlohmann::json{{"j", rec.j},
                                   {"diameter", rec.diameter},
                                   {"d_av", rec.d_av},
                                   {"s_min", std::move(members)}});
  }
  nlohmann::json best = potential_to_json(report.best.config);
  best["phi"] = report.best.value;
  nlohmann::json out{{"best", std::move(best)},
                     {"iterations", std::move(iters)},
                     {"verdict", to_string(report.verdict)}};
  if (report.has_planted) out["planted_phi"] = report.planted_phi;
  return out;
}

std::string d_matrix_to_csv(const std::vector<double>& ks, const std::vector<double>& hs,
                            const std::vector<std::vector<double>>& d,
                            const std::vector<std::pair<std::string, std::string>>& provenance) {
  std::ostringstream out;
  for (const auto& [key, value] : provenance) out << "# " << key << " " << value << "\n";
  out << "k";
  for (double h : hs) out << ",h=" << format_double(h);
  out << "\n";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    out << format_double(ks[i]);
    for (std::size_t j = 0; j < hs.size(); ++j) out << "," << format_double(d[i][j]);
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << content;
}

}  // namespace phasefit
