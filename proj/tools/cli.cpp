#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bootlab/dynamics.hpp"
#include "bootlab/error.hpp"
#include "bootlab/io.hpp"
#include "bootlab/lattice.hpp"
#include "bootlab/montecarlo.hpp"
#include "bootlab/special.hpp"
#include "bootlab/structure.hpp"

namespace bootlab::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string format = "text";
  bool json_flag = false;
  std::string out_path;

  std::string spec_path;
  std::string cells_path;
  std::string bc = "none";
  std::string rect;
  std::string x;
  std::string corner;
  std::string a;
  std::string b;
  std::string f = "g:1";
  std::string file;

  std::optional<double> p;
  std::optional<double> tol;
  double u = 0.0;
  double target = 0.5;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 42;
  int d = 2;
  int r = 2;
  int dmax = 7;
  int axis = 1;
  int m = 1;
  int ell = 0;
  int L = 1;
  int len = 1;
  int grid = 200;
  int threads = 0;
  bool full = false;
};

json cells_json(const LatticeSpec& spec, const CellSet& s) {
  json arr = json::array();
  s.for_each([&](std::size_t i) { arr.push_back(spec.cell(i)); });
  return arr;
}

json report_json(const TrialReport& r) {
  return {{"p", r.p},
          {"estimate", r.estimate},
          {"half_width", r.half_width},
          {"trials", r.trials},
          {"successes", r.successes},
          {"seed", r.master_seed}};
}

BoundaryCondition parse_bc(const std::string& text) {
  if (text == "none") return BoundaryCondition::none();
  if (text == "all-outside") return BoundaryCondition::all_outside();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto mode = text.substr(0, colon);
    const auto axis = parse_int_list(text.substr(colon + 1));
    if (axis.size() == 1 && mode == "half-low") return BoundaryCondition::half_low(axis[0]);
    if (axis.size() == 1 && mode == "half-high") return BoundaryCondition::half_high(axis[0]);
  }
  throw DomainError("boundary condition must be none, all-outside, half-low:J or half-high:J");
}

CostFn parse_cost(const std::string& text) {
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto name = text.substr(0, colon);
    const auto arg = text.substr(colon + 1);
    if (name == "g") {
      const int k = parse_int_list(arg).at(0);
      if (k < 1) throw DomainError("g:K needs K >= 1");
      return [k](double z) { return g(k, z); };
    }
    if (name == "const") {
      const double c = parse_double_list(arg).at(0);
      if (!(c > 0.0)) throw DomainError("const:C needs C > 0");
      return [c](double) { return c; };
    }
  }
  throw DomainError("cost function must be g:K or const:C");
}

std::vector<int> parse_corner(const std::string& text) { return parse_int_list(text); }

const LatticeSpec& need_spec(const Options& o, std::optional<LatticeSpec>& holder) {
  if (o.spec_path.empty()) throw DomainError("--spec is required");
  holder = read_spec_file(o.spec_path);
  return *holder;
}

CellSet need_cells(const Options& o, const LatticeSpec& spec) {
  if (o.cells_path.empty()) throw DomainError("--cells is required");
  return read_cells_file(spec, o.cells_path);
}

Rect need_rect(const Options& o) {
  if (o.rect.empty()) throw DomainError("--rect is required");
  return parse_rect(o.rect);
}

double need_p(const Options& o) {
  if (!o.p) throw DomainError("--p is required");
  return *o.p;
}

// ---------------------------------------------------------------------------

json run(const std::string& cmd, const Options& o) {
  std::optional<LatticeSpec> holder;
  json j;
  if (cmd == "lambda") {
    const double tol = o.tol.value_or(1e-8);
    const auto q = lambda(o.d, o.r, tol);
    j = {{"d", o.d},
         {"r", o.r},
         {"tol", tol},
         {"value", q.value},
         {"abs_error_estimate", q.abs_error_estimate},
         {"truncation_point", q.truncation_point}};
  } else if (cmd == "table") {
    const double tol = o.tol.value_or(1e-9);
    if (o.dmax < 2) throw DomainError("--dmax must be at least 2");
    json entries = json::array();
    for (int r = 2; r <= o.dmax; ++r) {
      for (int d = r; d <= o.dmax; ++d) {
        const auto q = lambda(d, r, tol);
        entries.push_back({{"d", d}, {"r", r}, {"value", q.value}, {"abs_error_estimate", q.abs_error_estimate}});
      }
    }
    j = {{"dmax", o.dmax}, {"tol", tol}, {"entries", entries}};
  } else if (cmd == "highdim-lambda") {
    const double tol = o.tol.value_or(1e-12);
    const double v = lambda_highdim(tol);
    j = {{"tol", tol}, {"value", v}, {"residual", highdim_series(v)}};
  } else if (cmd == "close") {
    const auto& spec = need_spec(o, holder);
    const auto a = need_cells(o, spec);
    std::optional<Rect> confine;
    if (!o.rect.empty()) confine = parse_rect(o.rect);
    const auto res = closure(spec, a, parse_bc(o.bc), confine);
    j = {{"generations", res.generations},
         {"final_size", res.closure.size()},
         {"history", res.history},
         {"cells", cells_json(spec, res.closure)}};
  } else if (cmd == "span") {
    const auto& spec = need_spec(o, holder);
    json rects = json::array();
    for (const auto& r : span(spec, need_cells(o, spec)).rects) rects.push_back(rect_to_json(r));
    j = {{"rects", rects}};
  } else if (cmd == "cross") {
    const auto& spec = need_spec(o, holder);
    const auto rect = need_rect(o);
    if (!o.cells_path.empty()) {
      j = {{"axis", o.axis}, {"rect", rect_to_json(rect)}, {"crossed", crossed(spec, rect, need_cells(o, spec), o.axis)}};
    } else {
      j = report_json(crossing_prob(spec, rect, need_p(o), o.axis, o.trials, o.seed, o.threads));
      j["axis"] = o.axis;
      j["rect"] = rect_to_json(rect);
    }
  } else if (cmd == "prob") {
    const auto& spec = need_spec(o, holder);
    j = report_json(percolation_prob(spec, need_p(o), o.trials, o.seed, o.threads));
  } else if (cmd == "pc") {
    const auto& spec = need_spec(o, holder);
    const auto e = pc_estimate(spec, o.trials, o.tol.value_or(1e-3), o.seed, o.target, o.threads);
    j = {{"p_lo", e.p_lo},
         {"p_mid", e.p_mid},
         {"p_hi", e.p_hi},
         {"trials_per_probe", e.trials_per_probe},
         {"target", e.target},
         {"probes", e.probes},
         {"seed", e.master_seed}};
  } else if (cmd == "diam-event") {
    const auto& spec = need_spec(o, holder);
    j = report_json(diam_event_prob(spec, need_p(o), o.len, o.trials, o.seed, o.threads));
    j["threshold_len"] = o.len;
  } else if (cmd == "lgap") {
    j = {{"m", o.m}, {"ell", o.ell}, {"u", o.u}, {"value", lgap_probability(o.m, o.ell, o.u)}};
  } else if (cmd == "gamma") {
    const auto& spec = need_spec(o, holder);
    if (o.x.empty()) throw DomainError("--x is required");
    const auto x = parse_cell(o.x);
    if (!o.cells_path.empty()) {
      const auto s = gamma_set(spec, need_cells(o, spec), o.m, x);
      j = {{"m", o.m}, {"x", x}, {"size", s.size()}, {"cells", cells_json(spec, s)}};
    } else {
      const auto r = gamma_expectation(spec, need_p(o), o.m, x, o.trials, o.seed, o.threads);
      j = {{"m", o.m},
           {"x", x},
           {"p", r.p},
           {"mean", r.mean},
           {"half_width", r.half_width},
           {"trials", r.trials},
           {"seed", r.master_seed}};
    }
  } else if (cmd == "chain") {
    if (o.file.empty()) throw DomainError("--file is required");
    std::ifstream in(o.file);
    if (!in) throw DomainError("cannot open chain file " + o.file);
    json cj;
    try {
      in >> cj;
    } catch (const json::exception& e) {
      throw DomainError(std::string("chain file is not valid JSON: ") + e.what());
    }
    GraphChain chain;
    try {
      chain.s = cj.at("S").get<int>();
      for (const auto& layer : cj.at("layers")) {
        ColouredGraph g;
        g.s = chain.s;
        const auto edges = [](const json& list) {
          std::vector<GraphEdge> out;
          for (const auto& e : list) {
            out.push_back({{e.at(0).at(0).get<int>(), e.at(0).at(1).get<int>()},
                           {e.at(1).at(0).get<int>(), e.at(1).at(1).get<int>()}});
          }
          return out;
        };
        if (layer.contains("good")) g.good = edges(layer.at("good"));
        if (layer.contains("bad")) g.bad = edges(layer.at("bad"));
        chain.layers.push_back(std::move(g));
      }
    } catch (const json::exception& e) {
      throw DomainError(std::string("malformed chain file: ") + e.what());
    }
    json admissible = json::array();
    for (const auto& g : chain.layers) admissible.push_back(is_admissible(g));
    j = {{"S", chain.s}, {"m", chain.layers.size()}, {"admissible", admissible}};
    j["crossed"] = chain_crossed(chain);
  } else if (cmd == "wpath") {
    const auto a = parse_double_list(o.a);
    const auto b = parse_double_list(o.b);
    const auto f = parse_cost(o.f);
    const auto w = w_min(f, a, b, o.grid);
    double upper = 0.0;
    for (std::size_t jx = 0; jx < a.size(); ++jx) {
      double prod = 1.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i != jx) prod *= a[i];
      }
      upper += (b[jx] - a[jx]) * f(prod);
    }
    j = {{"f", o.f}, {"a", a}, {"b", b}, {"grid", w.grid}, {"value", w.value}, {"slack", w.slack},
         {"axis_order_bound", upper}};
  } else if (cmd == "al-window") {
    const auto& spec = need_spec(o, holder);
    const auto r = al_window(spec, need_cells(o, spec), o.L);
    j = {{"L", o.L}, {"rect", rect_to_json(r)}, {"long", r.long_side()}};
  } else if (cmd == "small-component") {
    const auto& spec = need_spec(o, holder);
    const auto x = small_component(spec, need_cells(o, spec), o.L);
    j = {{"L", o.L}, {"diam", diam(spec, x)}, {"size", x.size()}, {"cells", cells_json(spec, x)}};
  } else if (cmd == "double-gap") {
    const auto& spec = need_spec(o, holder);
    const auto rect = need_rect(o);
    j = {{"axis", o.axis},
         {"rect", rect_to_json(rect)},
         {"double_gap", has_double_gap(spec, rect, need_cells(o, spec), o.axis)}};
  } else if (cmd == "blocked") {
    const auto& spec = need_spec(o, holder);
    const auto a = need_cells(o, spec);
    if (o.corner.empty()) throw DomainError("--corner is required");
    const SlabEdge edge{parse_corner(o.corner), o.axis};
    const bool blocked = edge_blocked(spec, a, edge, o.full);
    json plus = json::array();
    json minus = json::array();
    SlabIndex x{edge.corner};
    const int kj = spec.k()[static_cast<std::size_t>(o.axis - 1)];
    for (int t = 1; t <= kj; ++t) {
      x.x[static_cast<std::size_t>(o.axis - 1)] = t;
      if (is_blocker(spec, a, x, edge, BlockerSign::Plus)) plus.push_back(t);
      if (is_blocker(spec, a, x, edge, BlockerSign::Minus)) minus.push_back(t);
    }
    j = {{"corner", edge.corner}, {"axis", edge.axis}, {"full", o.full}, {"blocked", blocked},
         {"plus_blockers", plus}, {"minus_blockers", minus}};
  } else if (cmd == "detercross") {
    const auto& spec = need_spec(o, holder);
    j = {{"axis", o.axis}, {"result", to_string(detercross_check(spec, need_cells(o, spec), o.axis))}};
  } else {
    throw DomainError("unknown subcommand " + cmd);
  }
  if (holder) j["spec"] = spec_to_json(*holder);
  j["command"] = cmd;
  j["schema_version"] = kSchemaVersion;
  return j;
}

// ---------------------------------------------------------------------------

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string fixed4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

std::map<std::pair<int, int>, double> table_values(const json& j) {
  std::map<std::pair<int, int>, double> out;
  for (const auto& e : j.at("entries")) out[{e.at("r").get<int>(), e.at("d").get<int>()}] = e.at("value").get<double>();
  return out;
}

void emit_table(const json& j, std::ostream& out, const std::string& sep, bool pad) {
  const int dmax = j.at("dmax").get<int>();
  const auto values = table_values(j);
  const auto cell = [&](const std::string& s) { return pad ? std::string(8 - std::min<std::size_t>(8, s.size()), ' ') + s : s; };
  out << (pad ? "r\\d" : "r/d");
  for (int d = 2; d <= dmax; ++d) out << sep << cell(std::to_string(d));
  out << '\n';
  for (int r = 2; r <= dmax; ++r) {
    out << (pad ? std::to_string(r) + "  " : std::to_string(r));
    for (int d = 2; d <= dmax; ++d) {
      out << sep << cell(d < r ? "-" : fixed4(values.at({r, d})));
    }
    out << '\n';
  }
}

void emit_text(const json& j, std::ostream& out) {
  if (j.at("command") == "table") {
    emit_table(j, out, " ", true);
    return;
  }
  for (const auto& [key, v] : j.items()) {
    if (v.is_array() && !v.empty() && (v.front().is_array() || v.front().is_object())) {
      out << key << ":\n";
      for (const auto& e : v) out << "  " << e.dump() << '\n';
    } else if (v.is_array()) {
      out << key << ":";
      for (const auto& e : v) out << ' ' << scalar_text(e);
      out << '\n';
    } else {
      out << key << ": " << scalar_text(v) << '\n';
    }
  }
}

void emit_csv(const json& j, std::ostream& out) {
  const auto cmd = j.at("command").get<std::string>();
  if (cmd == "table") {
    emit_table(j, out, ",", false);
    return;
  }
  if (j.contains("estimate")) {
    out << "p,estimate,half_width,trials,seed\n";
    out << j.at("p").dump() << ',' << j.at("estimate").dump() << ',' << j.at("half_width").dump() << ','
        << j.at("trials").dump() << ',' << j.at("seed").dump() << '\n';
    return;
  }
  if (j.contains("cells")) {
    for (const auto& c : j.at("cells")) {
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i].dump();
      out << '\n';
    }
    return;
  }
  if (j.contains("rects")) {
    out << "lo,hi\n";
    for (const auto& r : j.at("rects")) {
      out << '"' << format_cell(r.at("lo").get<std::vector<int>>()) << "\",\"" << format_cell(r.at("hi").get<std::vector<int>>())
          << "\"\n";
    }
    return;
  }
  std::string header;
  std::string row;
  for (const auto& [key, v] : j.items()) {
    if (v.is_structured()) continue;
    header += (header.empty() ? "" : ",") + key;
    row += (row.empty() ? "" : ",") + scalar_text(v);
  }
  out << header << '\n' << row << '\n';
}

void emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << '\n';
  } else if (format == "csv") {
    emit_csv(j, out);
  } else {
    emit_text(j, out);
  }
}

// ---------------------------------------------------------------------------

void add_spec(CLI::App* sub, Options& o) { sub->add_option("--spec", o.spec_path, "structure spec (JSON)")->required(); }
void add_cells(CLI::App* sub, Options& o, bool required) {
  auto* opt = sub->add_option("--cells", o.cells_path, "cell list, one cell per line");
  if (required) opt->required();
}
void add_mc(CLI::App* sub, Options& o, bool p_required) {
  auto* p = sub->add_option("--p", o.p, "site density")->check(CLI::Range(0.0, 1.0));
  if (p_required) p->required();
  sub->add_option("--trials", o.trials, "number of trials")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--threads", o.threads, "worker threads (0 = machine)")->check(CLI::NonNegativeNumber);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bootstrap percolation laboratory", "bootlab"};
  app.require_subcommand(1, 1);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_flag("--json", o.json_flag, "shorthand for --format json");
  app.add_option("--out", o.out_path, "write the report to a file");
  app.fallthrough();

  auto* sub = app.add_subcommand("lambda", "threshold constant lambda(d,r)");
  sub->add_option("--d", o.d)->required();
  sub->add_option("--r", o.r)->required();
  sub->add_option("--tol", o.tol)->check(CLI::PositiveNumber);

  sub = app.add_subcommand("table", "lambda(d,r) for 2 <= r <= d <= dmax");
  sub->add_option("--dmax", o.dmax);
  sub->add_option("--tol", o.tol)->check(CLI::PositiveNumber);

  sub = app.add_subcommand("highdim-lambda", "root of the high-dimensional series");
  sub->add_option("--tol", o.tol)->check(CLI::PositiveNumber);

  sub = app.add_subcommand("close", "closure of a cell set");
  add_spec(sub, o);
  add_cells(sub, o, true);
  sub->add_option("--bc", o.bc, "none | all-outside | half-low:J | half-high:J");
  sub->add_option("--rect", o.rect, "confine to x1,y1:x2,y2");

  sub = app.add_subcommand("span", "bounding rectangles of the closure components");
  add_spec(sub, o);
  add_cells(sub, o, true);

  sub = app.add_subcommand("cross", "crossing of a rectangle (deterministic with --cells, else Monte Carlo)");
  add_spec(sub, o);
  add_cells(sub, o, false);
  sub->add_option("--rect", o.rect)->required();
  sub->add_option("--axis", o.axis);
  add_mc(sub, o, false);

  sub = app.add_subcommand("prob", "percolation probability");
  add_spec(sub, o);
  add_mc(sub, o, true);

  sub = app.add_subcommand("pc", "critical probability by bisection");
  add_spec(sub, o);
  add_mc(sub, o, false);
  sub->add_option("--tol", o.tol)->check(CLI::PositiveNumber);
  sub->add_option("--target", o.target)->check(CLI::Range(0.0, 1.0));

  sub = app.add_subcommand("diam-event", "probability that diam of the closure reaches --len");
  add_spec(sub, o);
  add_mc(sub, o, true);
  sub->add_option("--len", o.len)->required()->check(CLI::PositiveNumber);

  sub = app.add_subcommand("lgap", "probability of no L-gap");
  sub->add_option("--m", o.m)->required();
  sub->add_option("--ell", o.ell)->required();
  sub->add_option("--u", o.u)->required();

  sub = app.add_subcommand("gamma", "cells joined to x by small internally filled sets");
  add_spec(sub, o);
  add_cells(sub, o, false);
  sub->add_option("--x", o.x)->required();
  sub->add_option("--m", o.m)->required();
  add_mc(sub, o, false);

  sub = app.add_subcommand("chain", "crossing of a chain of two-coloured graphs");
  sub->add_option("--file", o.file)->required();

  sub = app.add_subcommand("wpath", "minimal staircase line integral");
  sub->add_option("--f", o.f, "g:K or const:C");
  sub->add_option("--a", o.a)->required();
  sub->add_option("--b", o.b)->required();
  sub->add_option("--grid", o.grid);

  sub = app.add_subcommand("al-window", "internally spanned rectangle with L <= long <= 2L");
  add_spec(sub, o);
  add_cells(sub, o, true);
  sub->add_option("--L", o.L)->required();

  sub = app.add_subcommand("small-component", "internally filled set with L <= diam <= 2L");
  add_spec(sub, o);
  add_cells(sub, o, true);
  sub->add_option("--L", o.L)->required();

  sub = app.add_subcommand("double-gap", "two adjacent empty hyperplanes");
  add_spec(sub, o);
  add_cells(sub, o, true);
  sub->add_option("--rect", o.rect)->required();
  sub->add_option("--axis", o.axis);

  sub = app.add_subcommand("blocked", "blocked boundary edge of a slab");
  add_spec(sub, o);
  add_cells(sub, o, true);
  sub->add_option("--corner", o.corner)->required();
  sub->add_option("--axis", o.axis, "thick direction");
  sub->add_flag("--full", o.full, "require the thirds constraints");

  sub = app.add_subcommand("detercross", "crossing trichotomy on a slab");
  add_spec(sub, o);
  add_cells(sub, o, true);
  sub->add_option("--axis", o.axis, "thick direction");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ConversionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  const std::string format = o.json_flag ? "json" : o.format;
  try {
    const auto report = run(cmd, o);
    if (o.out_path.empty()) {
      emit(report, format, out);
    } else {
      std::ofstream file(o.out_path);
      if (!file) throw DomainError("cannot write " + o.out_path);
      emit(report, format, file);
    }
    return kExitOk;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << " (partial value " << std::setprecision(17) << e.partial_value()
        << ", error estimate " << e.partial_error() << ")\n";
    return kExitConvergence;
  } catch (const LemmaViolation& e) {
    err << "lemma violation: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace bootlab::cli
