#include "bootlab/io.hpp"

#include <fstream>
#include <sstream>

#include "bootlab/error.hpp"

namespace bootlab {
namespace {

int get_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw DomainError(std::string("spec is missing \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw DomainError(std::string("spec field \"") + key + "\" must be an integer");
  return v.get<int>();
}

int get_int_or(const nlohmann::json& j, const char* key, int fallback) {
  return j.contains(key) ? get_int(j, key) : fallback;
}

std::vector<int> get_sides(const nlohmann::json& j, const char* key, int count) {
  if (!j.contains(key)) throw DomainError(std::string("spec is missing \"") + key + "\"");
  const auto& v = j.at(key);
  if (v.is_number_integer()) {
    if (count < 0) throw DomainError(std::string("cannot infer the length of \"") + key + "\"");
    return std::vector<int>(static_cast<std::size_t>(count), v.get<int>());
  }
  if (!v.is_array()) throw DomainError(std::string("spec field \"") + key + "\" must be an integer or array");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw DomainError(std::string("spec field \"") + key + "\" must hold integers");
    out.push_back(x.get<int>());
  }
  if (count >= 0 && static_cast<int>(out.size()) != count) {
    throw DomainError(std::string("spec field \"") + key + "\" has the wrong length");
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

LatticeSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("spec must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) throw DomainError("spec needs a string \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "uniform") {
    if (get_int_or(j, "ell", 0) != 0) throw DomainError("uniform structures have ell = 0");
    return LatticeSpec::uniform(get_int(j, "d"), get_int(j, "n"), get_int(j, "r"));
  }
  if (kind == "thick") {
    return LatticeSpec::thick(get_int(j, "d"), get_int(j, "ell"), get_int(j, "n"), get_int(j, "k"),
                              get_int(j, "r"));
  }
  if (kind == "slab") {
    if (get_int_or(j, "r", 1) != 1) throw DomainError("slab structures have base threshold 1");
    const int d = get_int(j, "d");
    const int ell = get_int_or(j, "ell", -1);
    if (d < 1) throw DomainError("lattice needs at least one long axis");
    return LatticeSpec::slab(get_sides(j, "n", d), get_sides(j, "k", ell));
  }
  throw DomainError("unknown structure kind \"" + kind + "\"");
}

nlohmann::json spec_to_json(const LatticeSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind());
  j["d"] = spec.d();
  j["ell"] = spec.ell();
  const auto sides = spec.sides();
  if (spec.kind() == StructureKind::Slab) {
    j["n"] = std::vector<int>(sides.begin(), sides.begin() + spec.d());
    j["k"] = std::vector<int>(spec.k().begin(), spec.k().end());
  } else {
    j["n"] = spec.n();
    j["k"] = spec.ell() > 0 ? spec.k().front() : 1;
  }
  j["r"] = spec.r();
  return j;
}

LatticeSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open spec file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("spec file " + path + " is not valid JSON: " + e.what());
  }
  return spec_from_json(j);
}

CellSet read_cells(const LatticeSpec& spec, std::istream& in) {
  CellSet s(spec.volume());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    Cell c;
    try {
      c = parse_cell(line);
    } catch (const DomainError& e) {
      throw DomainError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (static_cast<int>(c.size()) != spec.dims()) {
      throw DomainError("line " + std::to_string(lineno) + ": expected " + std::to_string(spec.dims()) +
                        " coordinates");
    }
    s.insert(spec.index(c));
  }
  return s;
}

CellSet read_cells_file(const LatticeSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open cell file " + path);
  return read_cells(spec, in);
}

void write_cells(const LatticeSpec& spec, const CellSet& s, std::ostream& out) {
  s.for_each([&](std::size_t i) { out << format_cell(spec.cell(i)) << '\n'; });
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw DomainError("not an integer: \"" + item + "\"");
    }
    if (used != item.size()) throw DomainError("not an integer: \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw DomainError("not a number: \"" + item + "\"");
    }
    if (used != item.size()) throw DomainError("not a number: \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("empty number list");
  return out;
}

Cell parse_cell(const std::string& text) { return parse_int_list(text); }

Rect parse_rect(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("rectangle must look like x1,y1:x2,y2");
  Rect r{parse_int_list(text.substr(0, colon)), parse_int_list(text.substr(colon + 1))};
  if (r.lo.size() != r.hi.size()) throw DomainError("rectangle corners have different dimensions");
  return r;
}

std::string format_cell(const Cell& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s;
}

std::string format_rect(const Rect& r) { return format_cell(r.lo) + ":" + format_cell(r.hi); }

nlohmann::json rect_to_json(const Rect& r) { return {{"lo", r.lo}, {"hi", r.hi}}; }

}  // namespace bootlab
