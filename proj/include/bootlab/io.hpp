#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bootlab/lattice.hpp"

namespace bootlab {

// {"kind":"uniform|thick|slab","d":..,"ell":..,"n":..,"k":..,"r":..}. For a
// slab "n" may list the long sides and "k" lists the thick sides.
LatticeSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const LatticeSpec& spec);
LatticeSpec read_spec_file(const std::string& path);

// One cell per line, comma-separated 1-based coordinates; '#' starts a
// comment.
CellSet read_cells(const LatticeSpec& spec, std::istream& in);
CellSet read_cells_file(const LatticeSpec& spec, const std::string& path);
void write_cells(const LatticeSpec& spec, const CellSet& s, std::ostream& out);

std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
Cell parse_cell(const std::string& text);
// "x1,y1:x2,y2"
Rect parse_rect(const std::string& text);
std::string format_rect(const Rect& r);
std::string format_cell(const Cell& c);

nlohmann::json rect_to_json(const Rect& r);

}  // namespace bootlab
