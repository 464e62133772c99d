// Batch front-end over the shared-library interface: reads a run-config,
// dispatches to the radial, classification or 2d pipelines, writes report.txt,
// report.json and CSV artifacts. Exit codes: classification verdict 0..4 for
// the check subcommands, 0 for the others, 64 config/expression parse error,
// 65 validation error, 70 solver non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ovpoisson.h"

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 64;
constexpr int kExitValidation = 65;
constexpr int kExitNoConvergence = 70;

struct CliFailure {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string msg) {
  throw CliFailure{code, std::move(msg)};
}

std::string num17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* verdict_name(int v) {
  switch (v) {
    case OVP_VERDICT_RADIAL_AND_BALL:
      return "RadialAndBall";
    case OVP_VERDICT_RADIAL_ONLY:
      return "RadialOnly";
    case OVP_VERDICT_INCONCLUSIVE:
      return "Inconclusive";
    case OVP_VERDICT_UNSOLVABLE:
      return "Unsolvable";
    case OVP_VERDICT_HYPOTHESIS_FAILS:
      return "HypothesisFails";
  }
  return "?";
}

// ---- RAII over the C handles ----------------------------------------------

template <class T, void (*Free)(T*)>
struct Handle {
  T* h = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(h); }
  T** out() { return &h; }
  operator T*() const { return h; }
};

using ManifoldH = Handle<ovp_manifold, ovp_manifold_free>;
using FieldH = Handle<ovp_field, ovp_field_free>;
using ProblemH = Handle<ovp_problem, ovp_problem_free>;
using ProfileH = Handle<ovp_profile, ovp_profile_free>;
using ReportH = Handle<ovp_report, ovp_report_free>;
using DomainH = Handle<ovp_domain2d, ovp_domain_free>;
using SolutionH = Handle<ovp_solution2d, ovp_solution_free>;
using CtableH = Handle<ovp_ctable, ovp_ctable_free>;

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { ovp_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

int exit_for_status(int status) {
  switch (status) {
    case OVP_ERR_PARSE:
      return kExitConfig;
    case OVP_ERR_NO_CONVERGENCE:
      return kExitNoConvergence;
    default:
      return kExitValidation;
  }
}

void check_ok(int status, const std::string& context) {
  if (status == OVP_OK) return;
  fail(exit_for_status(status), context + ": " + ovp_last_error() + "\n");
}

// ---- run-config format ----------------------------------------------------
//
// One assignment per line: key = value. Values are quoted strings, numbers,
// true/false, or one-line inline tables { key = value, ... }. '#' starts a
// comment. Strings carry no escape sequences.

struct Value {
  enum class Kind { Str, Num, Bool, Table };
  Kind kind = Kind::Num;
  std::string str;
  double num = 0;
  bool flag = false;
  std::map<std::string, Value> table;
  int line = 0, col = 0;          // 1-based position of the value text
  int key_line = 0, key_col = 0;  // position of the key that introduced it
};

struct Config {
  std::string path;
  std::vector<std::string> lines;
  std::map<std::string, Value> entries;

  [[noreturn]] void diag(int code, int line, int col,
                         const std::string& msg) const {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg << "\n";
    if (line >= 1 && line <= int(lines.size())) {
      os << "  " << lines[line - 1] << "\n";
      os << "  " << std::string(col > 0 ? col - 1 : 0, ' ') << "^\n";
    }
    fail(code, os.str());
  }
};

struct LineCursor {
  const std::string& text;
  int line;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size() || text[pos] == '#';
  }
  int col() const { return int(pos) + 1; }
};

bool key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string parse_key(Config& cfg, LineCursor& cur) {
  cur.skip_ws();
  size_t start = cur.pos;
  while (cur.pos < cur.text.size() && key_char(cur.text[cur.pos])) ++cur.pos;
  if (cur.pos == start)
    cfg.diag(kExitConfig, cur.line, cur.col(), "expected a key");
  return cur.text.substr(start, cur.pos - start);
}

Value parse_value(Config& cfg, LineCursor& cur);

Value parse_table(Config& cfg, LineCursor& cur) {
  Value v;
  v.kind = Value::Kind::Table;
  v.line = cur.line;
  v.col = cur.col();
  ++cur.pos;  // '{'
  cur.skip_ws();
  if (cur.pos < cur.text.size() && cur.text[cur.pos] == '}') {
    ++cur.pos;
    return v;
  }
  for (;;) {
    int key_line = cur.line, key_col = cur.col();
    std::string key = parse_key(cfg, cur);
    cur.skip_ws();
    if (cur.pos >= cur.text.size() || cur.text[cur.pos] != '=')
      cfg.diag(kExitConfig, cur.line, cur.col(), "expected '=' after key");
    ++cur.pos;
    Value item = parse_value(cfg, cur);
    item.key_line = key_line;
    item.key_col = key_col;
    if (!v.table.emplace(key, std::move(item)).second)
      cfg.diag(kExitConfig, key_line, key_col, "duplicate key '" + key + "'");
    cur.skip_ws();
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == ',') {
      ++cur.pos;
      continue;
    }
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == '}') {
      ++cur.pos;
      return v;
    }
    cfg.diag(kExitConfig, cur.line, cur.col(), "expected ',' or '}'");
  }
}

Value parse_value(Config& cfg, LineCursor& cur) {
  cur.skip_ws();
  if (cur.pos >= cur.text.size())
    cfg.diag(kExitConfig, cur.line, cur.col(), "expected a value");
  char c = cur.text[cur.pos];
  Value v;
  v.line = cur.line;
  v.col = cur.col();
  if (c == '{') return parse_table(cfg, cur);
  if (c == '"') {
    size_t end = cur.text.find('"', cur.pos + 1);
    if (end == std::string::npos)
      cfg.diag(kExitConfig, cur.line, cur.col(), "unterminated string");
    v.kind = Value::Kind::Str;
    v.str = cur.text.substr(cur.pos + 1, end - cur.pos - 1);
    cur.pos = end + 1;
    return v;
  }
  if (std::isalpha(static_cast<unsigned char>(c))) {
    size_t start = cur.pos;
    while (cur.pos < cur.text.size() && key_char(cur.text[cur.pos])) ++cur.pos;
    std::string word = cur.text.substr(start, cur.pos - start);
    if (word == "true" || word == "false") {
      v.kind = Value::Kind::Bool;
      v.flag = word == "true";
      return v;
    }
    cfg.diag(kExitConfig, cur.line, int(start) + 1,
             "unexpected word '" + word + "' (strings are quoted)");
  }
  const char* begin = cur.text.c_str() + cur.pos;
  char* end = nullptr;
  double num = std::strtod(begin, &end);
  if (end == begin)
    cfg.diag(kExitConfig, cur.line, cur.col(), "expected a value");
  v.kind = Value::Kind::Num;
  v.num = num;
  cur.pos += size_t(end - begin);
  return v;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kExitConfig, "cannot read config file '" + path + "'\n");
  Config cfg;
  cfg.path = path;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    cfg.lines.push_back(line);
  }
  for (int ln = 1; ln <= int(cfg.lines.size()); ++ln) {
    LineCursor cur{cfg.lines[ln - 1], ln};
    if (cur.done()) continue;
    int key_line = cur.line, key_col = cur.col();
    std::string key = parse_key(cfg, cur);
    cur.skip_ws();
    if (cur.pos >= cur.text.size() || cur.text[cur.pos] != '=')
      cfg.diag(kExitConfig, cur.line, cur.col(), "expected '=' after key");
    ++cur.pos;
    Value v = parse_value(cfg, cur);
    v.key_line = key_line;
    v.key_col = key_col;
    if (!cur.done())
      cfg.diag(kExitConfig, cur.line, cur.col(), "trailing text after value");
    if (!cfg.entries.emplace(key, std::move(v)).second)
      cfg.diag(kExitConfig, key_line, key_col, "duplicate key '" + key + "'");
  }
  return cfg;
}

// ---- typed access ---------------------------------------------------------

const Value* find(const Config& cfg, const std::string& key) {
  auto it = cfg.entries.find(key);
  return it == cfg.entries.end() ? nullptr : &it->second;
}

const Value& require(const Config& cfg, const std::string& key) {
  const Value* v = find(cfg, key);
  if (!v)
    fail(kExitValidation,
         cfg.path + ": missing required key '" + key + "'\n");
  return *v;
}

const Value& expect_kind(const Config& cfg, const Value& v, Value::Kind kind,
                         const char* what) {
  if (v.kind != kind)
    cfg.diag(kExitConfig, v.line, v.col, std::string("expected ") + what);
  return v;
}

std::string get_str(const Config& cfg, const Value& v) {
  return expect_kind(cfg, v, Value::Kind::Str, "a quoted string").str;
}

double get_num(const Config& cfg, const Value& v) {
  return expect_kind(cfg, v, Value::Kind::Num, "a number").num;
}

int get_int(const Config& cfg, const Value& v) {
  double x = get_num(cfg, v);
  double r = std::round(x);
  if (std::abs(x - r) > 1e-9 || std::abs(r) > 2e9)
    cfg.diag(kExitConfig, v.line, v.col, "expected an integer");
  return int(r);
}

double num_or(const Config& cfg, const std::string& key, double dflt) {
  const Value* v = find(cfg, key);
  return v ? get_num(cfg, *v) : dflt;
}

int int_or(const Config& cfg, const std::string& key, int dflt) {
  const Value* v = find(cfg, key);
  return v ? get_int(cfg, *v) : dflt;
}

bool bool_or(const Config& cfg, const std::string& key, bool dflt) {
  const Value* v = find(cfg, key);
  if (!v) return dflt;
  return expect_kind(cfg, *v, Value::Kind::Bool, "true or false").flag;
}

std::string str_or(const Config& cfg, const std::string& key,
                   const std::string& dflt) {
  const Value* v = find(cfg, key);
  return v ? get_str(cfg, *v) : dflt;
}

void reject_unknown(const Config& cfg, const std::set<std::string>& allowed) {
  for (const auto& [key, v] : cfg.entries)
    if (!allowed.count(key))
      cfg.diag(kExitValidation, v.key_line, v.key_col,
               "unknown key '" + key + "' for this subcommand");
}

void check_config_kind(const Config& cfg, const char* expected) {
  const Value* v = find(cfg, "kind");
  if (!v) return;
  std::string kind = get_str(cfg, *v);
  if (kind != expected)
    cfg.diag(kExitValidation, v->line, v->col,
             "config kind '" + kind + "' does not match the '" +
                 std::string(expected) + "' subcommand");
}

// Parse expression text already located in the config, pointing the caret at
// the failing character inside the original line.
void parse_field_at(const Config& cfg, const Value& v, const std::string& expr,
                    ovp_field** out) {
  if (ovp_field_parse(expr.c_str(), out) == OVP_OK) return;
  long off = ovp_last_error_offset();
  int col = v.col + 1 + int(off < 0 ? 0 : off);  // v.col is the opening quote
  cfg.diag(kExitConfig, v.line, col, ovp_last_error());
}

void field_from_key(const Config& cfg, const std::string& key,
                    const char* dflt, ovp_field** out) {
  const Value* v = find(cfg, key);
  if (!v) {
    if (!dflt)
      fail(kExitValidation,
           cfg.path + ": missing required key '" + key + "'\n");
    check_ok(ovp_field_parse(dflt, out), "field '" + key + "'");
    return;
  }
  parse_field_at(cfg, *v, get_str(cfg, *v), out);
}

// manifold = "euclidean" | "hyperbolic" | "spherical"
//          | { h = "<expr in r>", S = <number|"inf"> }
void make_manifold(const Config& cfg, ManifoldH& m, int* dim_out,
                   ordered_json* descr) {
  int dim = get_int(cfg, require(cfg, "dimension"));
  const Value& mv = require(cfg, "manifold");
  if (mv.kind == Value::Kind::Str) {
    const std::string name = mv.str;
    int rc;
    if (name == "euclidean")
      rc = ovp_manifold_euclidean(dim, m.out());
    else if (name == "hyperbolic")
      rc = ovp_manifold_hyperbolic(dim, m.out());
    else if (name == "spherical")
      rc = ovp_manifold_spherical(dim, m.out());
    else
      cfg.diag(kExitValidation, mv.line, mv.col,
               "unknown manifold preset '" + name + "'");
    check_ok(rc, "manifold");
    *descr = name;
  } else if (mv.kind == Value::Kind::Table) {
    for (const auto& [key, item] : mv.table)
      if (key != "h" && key != "S")
        cfg.diag(kExitValidation, item.key_line, item.key_col,
                 "unknown manifold key '" + key + "'");
    auto hit = mv.table.find("h");
    if (hit == mv.table.end())
      cfg.diag(kExitValidation, mv.line, mv.col, "manifold table needs h");
    std::string h_expr = get_str(cfg, hit->second);
    double S = INFINITY;
    ordered_json s_descr = "inf";
    if (auto sit = mv.table.find("S"); sit != mv.table.end()) {
      if (sit->second.kind == Value::Kind::Str) {
        if (sit->second.str != "inf")
          cfg.diag(kExitConfig, sit->second.line, sit->second.col,
                   "expected a number or \"inf\"");
      } else {
        S = get_num(cfg, sit->second);
        s_descr = S;
      }
    }
    // surface parse errors in h with a caret before constructing
    {
      FieldH probe;
      parse_field_at(cfg, hit->second, h_expr, probe.out());
    }
    check_ok(ovp_manifold_custom(h_expr.c_str(), S, dim, m.out()), "manifold");
    *descr = ordered_json{{"h", h_expr}, {"S", s_descr}};
  } else {
    cfg.diag(kExitConfig, mv.line, mv.col,
             "expected a preset name or an inline table");
  }
  *dim_out = dim;
}

std::string manifold_text(const ordered_json& descr) {
  if (descr.is_string()) return descr.get<std::string>();
  std::string s = "custom(h = " + descr["h"].get<std::string>() + ", S = ";
  s += descr["S"].is_string() ? descr["S"].get<std::string>()
                              : num17(descr["S"].get<double>());
  return s + ")";
}

// ---- output ---------------------------------------------------------------

void write_file(const std::string& dir, const char* name,
                const std::string& content) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::filesystem::path p = std::filesystem::path(dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(kExitValidation, "cannot write '" + p.string() + "'\n");
  out << content;
  out.flush();
  if (!out) fail(kExitValidation, "cannot write '" + p.string() + "'\n");
}

std::string render_text(const std::vector<std::pair<std::string, std::string>>&
                            fields) {
  std::ostringstream os;
  for (const auto& [k, v] : fields) os << k << " = " << v << "\n";
  return os.str();
}

// ---- subcommands ----------------------------------------------------------

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  int grid = 0;
  double tol = 0;
};

int run_radial(const CommonArgs& args) {
  Config cfg = load_config(args.config_path);
  check_config_kind(cfg, "radial");
  reject_unknown(cfg, {"kind", "manifold", "dimension", "f", "phi", "kappa",
                       "r_lo", "r_hi", "R0", "R", "c", "profile_n"});

  ManifoldH m;
  int dim = 0;
  ordered_json mdescr;
  make_manifold(cfg, m, &dim, &mdescr);

  FieldH f, phi, kappa;
  field_from_key(cfg, "f", nullptr, f.out());
  field_from_key(cfg, "phi", "0", phi.out());
  field_from_key(cfg, "kappa", "0", kappa.out());

  double r_lo = get_num(cfg, require(cfg, "r_lo"));
  double r_hi = get_num(cfg, require(cfg, "r_hi"));
  std::optional<double> R0;
  if (const Value* v = find(cfg, "R0")) R0 = get_num(cfg, *v);
  double R = num_or(cfg, "R", r_hi);
  double c = num_or(cfg, "c", 0.0);
  int profile_n = args.grid > 0 ? args.grid : int_or(cfg, "profile_n", 512);

  ProblemH prob;
  double r0v = R0.value_or(0);
  check_ok(ovp_problem_create(m, f, phi, kappa, r_lo, r_hi,
                              R0 ? &r0v : nullptr, 1, prob.out()),
           "problem");

  ProfileH p;
  if (R0)
    check_ok(ovp_annulus_profile(prob, R, c, profile_n, p.out()), "profile");
  else
    check_ok(ovp_ball_profile(prob, R, c, profile_n, p.out()), "profile");

  size_t n = 0;
  const double *pr = nullptr, *pu = nullptr, *pdu = nullptr;
  check_ok(ovp_profile_size(p, &n), "profile");
  check_ok(ovp_profile_data(p, &pr, &pu, &pdu), "profile");
  double residual = 0;
  check_ok(ovp_profile_ode_residual(p, prob, &residual), "profile residual");

  std::vector<std::pair<std::string, std::string>> fields;
  fields.emplace_back("kind", "radial");
  fields.emplace_back("manifold", manifold_text(mdescr));
  fields.emplace_back("dimension", std::to_string(dim));
  fields.emplace_back("f", str_or(cfg, "f", ""));
  fields.emplace_back("r_lo", num17(r_lo));
  fields.emplace_back("r_hi", num17(r_hi));
  if (R0) fields.emplace_back("R0", num17(*R0));
  fields.emplace_back("R", num17(R));
  fields.emplace_back("c", num17(c));
  fields.emplace_back("profile_nodes", std::to_string(n));
  fields.emplace_back("boundary_value", num17(pu[n - 1]));
  fields.emplace_back("boundary_slope", num17(pdu[n - 1]));
  fields.emplace_back("inner_value", num17(pu[0]));
  fields.emplace_back("ode_residual", num17(residual));

  ordered_json j;
  j["kind"] = "radial";
  j["manifold"] = mdescr;
  j["dimension"] = dim;
  j["f"] = str_or(cfg, "f", "");
  j["r_lo"] = r_lo;
  j["r_hi"] = r_hi;
  if (R0) j["R0"] = *R0;
  j["R"] = R;
  j["c"] = c;
  j["profile_nodes"] = n;
  j["boundary_value"] = pu[n - 1];
  j["boundary_slope"] = pdu[n - 1];
  j["inner_value"] = pu[0];
  j["ode_residual"] = residual;

  OwnedString csv;
  check_ok(ovp_profile_csv(p, &csv.s), "profile csv");

  std::string text = render_text(fields);
  write_file(args.out_dir, "report.txt", text);
  write_file(args.out_dir, "report.json", j.dump(2) + "\n");
  write_file(args.out_dir, "profile.csv", csv.str());
  std::fputs(text.c_str(), stdout);
  return 0;
}

int run_check(const CommonArgs& args, bool bernoulli) {
  Config cfg = load_config(args.config_path);
  check_config_kind(cfg, bernoulli ? "bernoulli" : "serrin");
  reject_unknown(cfg, {"kind", "manifold", "dimension", "f", "phi", "kappa",
                       "r_lo", "r_hi", "R0", "interior_sphere", "grid_n"});

  ManifoldH m;
  int dim = 0;
  ordered_json mdescr;
  make_manifold(cfg, m, &dim, &mdescr);

  FieldH f, phi, kappa;
  field_from_key(cfg, "f", nullptr, f.out());
  field_from_key(cfg, "phi", nullptr, phi.out());
  field_from_key(cfg, "kappa", nullptr, kappa.out());

  double r_lo = get_num(cfg, require(cfg, "r_lo"));
  double r_hi = get_num(cfg, require(cfg, "r_hi"));
  std::optional<double> R0;
  if (const Value* v = find(cfg, "R0")) R0 = get_num(cfg, *v);
  bool interior = bool_or(cfg, "interior_sphere", true);
  int grid_n = args.grid > 0 ? args.grid : int_or(cfg, "grid_n", 0);

  ProblemH prob;
  double r0v = R0.value_or(0);
  check_ok(ovp_problem_create(m, f, phi, kappa, r_lo, r_hi,
                              R0 ? &r0v : nullptr, interior ? 1 : 0,
                              prob.out()),
           "problem");

  ReportH rep;
  if (bernoulli)
    check_ok(ovp_bernoulli_check(prob, grid_n, rep.out()), "check");
  else
    check_ok(ovp_serrin_check(prob, grid_n, rep.out()), "check");

  int verdict = 0;
  check_ok(ovp_report_verdict(rep, &verdict), "report");
  OwnedString text, json, csv;
  check_ok(ovp_report_text(rep, &text.s), "report");
  check_ok(ovp_report_json(rep, &json.s), "report");
  check_ok(ovp_report_defect_csv(rep, &csv.s), "report");

  write_file(args.out_dir, "report.txt", text.str());
  write_file(args.out_dir, "report.json", json.str());
  write_file(args.out_dir, "defect.csv", csv.str());
  std::fputs(text.str().c_str(), stdout);
  return verdict;
}

// domain = { kind = "ball", R = 1.0 } | { kind = "ball", rho = "<expr>" }
//        | { kind = "annulus", R0 = 0.5, R = 1.5 }
//        | { kind = "annulus", R0 = 0.5, rho = "<expr>" }
//        | { kind = "ellipse", a = 1.5, b = 1.0 }
void make_domain(const Config& cfg, DomainH& dom, ordered_json* descr) {
  const Value& dv = require(cfg, "domain");
  expect_kind(cfg, dv, Value::Kind::Table, "an inline table");
  auto kit = dv.table.find("kind");
  if (kit == dv.table.end())
    cfg.diag(kExitValidation, dv.line, dv.col, "domain table needs kind");
  std::string kind = get_str(cfg, kit->second);

  auto known = [&](std::initializer_list<const char*> keys) {
    for (const auto& [key, item] : dv.table) {
      bool ok = key == "kind";
      for (const char* k : keys) ok = ok || key == k;
      if (!ok)
        cfg.diag(kExitValidation, item.key_line, item.key_col,
                 "unknown domain key '" + key + "'");
    }
  };
  auto table_num = [&](const char* key) -> const Value* {
    auto it = dv.table.find(key);
    return it == dv.table.end() ? nullptr : &it->second;
  };

  if (kind == "ball") {
    known({"R", "rho"});
    if (const Value* rho = table_num("rho")) {
      FieldH rf;
      parse_field_at(cfg, *rho, get_str(cfg, *rho), rf.out());
      check_ok(ovp_domain_ball_shaped(rf, dom.out()), "domain");
      *descr = ordered_json{{"kind", "ball"}, {"rho", get_str(cfg, *rho)}};
    } else if (const Value* R = table_num("R")) {
      check_ok(ovp_domain_ball(get_num(cfg, *R), dom.out()), "domain");
      *descr = ordered_json{{"kind", "ball"}, {"R", get_num(cfg, *R)}};
    } else {
      cfg.diag(kExitValidation, dv.line, dv.col, "ball domain needs R or rho");
    }
  } else if (kind == "annulus") {
    known({"R0", "R", "rho"});
    const Value* R0 = table_num("R0");
    if (!R0)
      cfg.diag(kExitValidation, dv.line, dv.col, "annulus domain needs R0");
    if (const Value* rho = table_num("rho")) {
      FieldH rf;
      parse_field_at(cfg, *rho, get_str(cfg, *rho), rf.out());
      check_ok(ovp_domain_annular_shaped(get_num(cfg, *R0), rf, dom.out()),
               "domain");
      *descr = ordered_json{{"kind", "annulus"},
                            {"R0", get_num(cfg, *R0)},
                            {"rho", get_str(cfg, *rho)}};
    } else if (const Value* R = table_num("R")) {
      check_ok(ovp_domain_annulus(get_num(cfg, *R0), get_num(cfg, *R),
                                  dom.out()),
               "domain");
      *descr = ordered_json{{"kind", "annulus"},
                            {"R0", get_num(cfg, *R0)},
                            {"R", get_num(cfg, *R)}};
    } else {
      cfg.diag(kExitValidation, dv.line, dv.col,
               "annulus domain needs R or rho");
    }
  } else if (kind == "ellipse") {
    known({"a", "b"});
    const Value* a = table_num("a");
    const Value* b = table_num("b");
    if (!a || !b)
      cfg.diag(kExitValidation, dv.line, dv.col, "ellipse domain needs a and b");
    check_ok(ovp_domain_ellipse(get_num(cfg, *a), get_num(cfg, *b), dom.out()),
             "domain");
    *descr = ordered_json{
        {"kind", "ellipse"}, {"a", get_num(cfg, *a)}, {"b", get_num(cfg, *b)}};
  } else {
    cfg.diag(kExitValidation, kit->second.line, kit->second.col,
             "unknown domain kind '" + kind + "'");
  }
}

int run_pde(const CommonArgs& args) {
  Config cfg = load_config(args.config_path);
  check_config_kind(cfg, "pde");
  reject_unknown(cfg, {"kind", "manifold", "dimension", "f", "g", "domain",
                       "n_s", "n_theta", "tol", "max_iter"});

  ManifoldH m;
  int dim = 0;
  ordered_json mdescr;
  make_manifold(cfg, m, &dim, &mdescr);

  DomainH dom;
  ordered_json ddescr;
  make_domain(cfg, dom, &ddescr);

  FieldH f, g;
  field_from_key(cfg, "f", nullptr, f.out());
  field_from_key(cfg, "g", "0", g.out());

  int n_s = args.grid > 0 ? args.grid : int_or(cfg, "n_s", 128);
  int n_theta = args.grid > 0 ? 2 * args.grid : int_or(cfg, "n_theta", 256);
  double tol = args.tol > 0 ? args.tol : num_or(cfg, "tol", 1e-10);
  int max_iter = int_or(cfg, "max_iter", 0);

  SolutionH sol;
  check_ok(ovp_solve_dirichlet(m, dom, f, g, n_s, n_theta, tol, max_iter,
                               sol.out()),
           "solve");

  int iters = 0, sor = 0;
  double residual = 0;
  check_ok(ovp_solution_stats(sol, &iters, &sor, &residual), "solution");
  const double* flux = nullptr;
  size_t fn = 0;
  check_ok(ovp_solution_flux_data(sol, &flux, &fn), "solution");
  double flux_min = flux[0], flux_max = flux[0];
  for (size_t j = 1; j < fn; ++j) {
    flux_min = std::min(flux_min, flux[j]);
    flux_max = std::max(flux_max, flux[j]);
  }

  std::vector<std::pair<std::string, std::string>> fields;
  fields.emplace_back("kind", "pde");
  fields.emplace_back("manifold", manifold_text(mdescr));
  fields.emplace_back("dimension", std::to_string(dim));
  fields.emplace_back("domain", ddescr["kind"].get<std::string>());
  fields.emplace_back("n_s", std::to_string(n_s));
  fields.emplace_back("n_theta", std::to_string(n_theta));
  fields.emplace_back("tol", num17(tol));
  fields.emplace_back("iterations", std::to_string(iters));
  fields.emplace_back("used_sor", sor ? "true" : "false");
  fields.emplace_back("final_residual", num17(residual));

  ordered_json j;
  j["kind"] = "pde";
  j["manifold"] = mdescr;
  j["dimension"] = dim;
  j["domain"] = ddescr;
  j["n_s"] = n_s;
  j["n_theta"] = n_theta;
  j["tol"] = tol;
  j["iterations"] = iters;
  j["used_sor"] = sor != 0;
  j["final_residual"] = residual;

  if (ddescr["kind"] != "annulus") {
    double pole = 0;
    check_ok(ovp_solution_value(sol, 0, 0, &pole), "solution");
    fields.emplace_back("pole_value", num17(pole));
    j["pole_value"] = pole;
  }
  fields.emplace_back("flux_min", num17(flux_min));
  fields.emplace_back("flux_max", num17(flux_max));
  j["flux_min"] = flux_min;
  j["flux_max"] = flux_max;

  OwnedString scsv, fcsv;
  check_ok(ovp_solution_csv(sol, &scsv.s), "solution csv");
  check_ok(ovp_solution_flux_csv(sol, &fcsv.s), "flux csv");

  std::string text = render_text(fields);
  write_file(args.out_dir, "report.txt", text);
  write_file(args.out_dir, "report.json", j.dump(2) + "\n");
  write_file(args.out_dir, "solution.csv", scsv.str());
  write_file(args.out_dir, "flux.csv", fcsv.str());
  std::fputs(text.c_str(), stdout);
  return 0;
}

int run_counterexample(const CommonArgs& args) {
  Config cfg = load_config(args.config_path);
  check_config_kind(cfg, "counterexample");
  reject_unknown(cfg, {"kind", "f", "a", "b", "n_s", "n_theta", "grid_n"});

  double a = get_num(cfg, require(cfg, "a"));
  double b = get_num(cfg, require(cfg, "b"));
  FieldH f;
  field_from_key(cfg, "f", nullptr, f.out());
  int n_s = args.grid > 0 ? args.grid : int_or(cfg, "n_s", 192);
  int n_theta = args.grid > 0 ? 2 * args.grid : int_or(cfg, "n_theta", 384);
  int grid_n = int_or(cfg, "grid_n", 0);

  CtableH ct;
  check_ok(ovp_counterexample_build(a, b, f, n_s, n_theta, ct.out()), "solve");

  size_t rows = 0;
  check_ok(ovp_ctable_size(ct, &rows), "table");
  const double *tr = nullptr, *tk = nullptr, *tm = nullptr;
  check_ok(ovp_ctable_data(ct, &tr, &tk, &tm), "table");
  double consistency = 0;
  check_ok(ovp_ctable_consistency(ct, &consistency), "table");
  double k_min = tk[0], k_max = tk[0];
  for (size_t i = 1; i < rows; ++i) {
    k_min = std::min(k_min, tk[i]);
    k_max = std::max(k_max, tk[i]);
  }
  int iters = 0, sor = 0;
  double residual = 0;
  check_ok(ovp_ctable_solution_stats(ct, &iters, &sor, &residual), "table");

  // check the recorded slope data against the radial criteria; a genuine
  // two-axis table is expected to fail both sign conditions
  std::string feed_verdict = "not_run";
  if (rows >= 2) {
    ManifoldH m2;
    check_ok(ovp_manifold_euclidean(2, m2.out()), "feed");
    FieldH phi0, ktab;
    check_ok(ovp_field_constant(0.0, phi0.out()), "feed");
    check_ok(ovp_field_table(tr, tk, rows, ktab.out()), "feed");
    ProblemH feed;
    check_ok(ovp_problem_create(m2, f, phi0, ktab, b, a, nullptr, 1,
                                feed.out()),
             "feed");
    ReportH rep;
    check_ok(ovp_serrin_check(feed, grid_n, rep.out()), "feed");
    int verdict = 0;
    check_ok(ovp_report_verdict(rep, &verdict), "feed");
    feed_verdict = verdict_name(verdict);
  }

  std::vector<std::pair<std::string, std::string>> fields;
  fields.emplace_back("kind", "counterexample");
  fields.emplace_back("a", num17(a));
  fields.emplace_back("b", num17(b));
  fields.emplace_back("n_s", std::to_string(n_s));
  fields.emplace_back("n_theta", std::to_string(n_theta));
  fields.emplace_back("rows", std::to_string(rows));
  fields.emplace_back("kappa_min", num17(k_min));
  fields.emplace_back("kappa_max", num17(k_max));
  fields.emplace_back("consistency", num17(consistency));
  fields.emplace_back("iterations", std::to_string(iters));
  fields.emplace_back("used_sor", sor ? "true" : "false");
  fields.emplace_back("final_residual", num17(residual));
  fields.emplace_back("feed_verdict", feed_verdict);

  ordered_json j;
  j["kind"] = "counterexample";
  j["a"] = a;
  j["b"] = b;
  j["n_s"] = n_s;
  j["n_theta"] = n_theta;
  j["rows"] = rows;
  j["kappa_min"] = k_min;
  j["kappa_max"] = k_max;
  j["consistency"] = consistency;
  j["iterations"] = iters;
  j["used_sor"] = sor != 0;
  j["final_residual"] = residual;
  j["feed_verdict"] = feed_verdict;

  OwnedString tcsv, scsv, fcsv;
  check_ok(ovp_ctable_csv(ct, &tcsv.s), "table csv");
  check_ok(ovp_ctable_solution_csv(ct, &scsv.s), "solution csv");
  check_ok(ovp_ctable_flux_csv(ct, &fcsv.s), "flux csv");

  std::string text = render_text(fields);
  write_file(args.out_dir, "report.txt", text);
  write_file(args.out_dir, "report.json", j.dump(2) + "\n");
  write_file(args.out_dir, "counterexample.csv", tcsv.str());
  write_file(args.out_dir, "solution.csv", scsv.str());
  write_file(args.out_dir, "flux.csv", fcsv.str());
  std::fputs(text.c_str(), stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radial solution formulas, rigidity classification and direct "
               "2d solves for overdetermined Poisson problems on rotational "
               "model spaces"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub, const char* tol_help) {
    sub->add_option("--config", args.config_path, "run-config file")
        ->required();
    sub->add_option("--out", args.out_dir, "output directory (default .)");
    sub->add_option("--grid", args.grid, "grid override");
    sub->add_option("--tol", args.tol, tol_help);
  };

  CLI::App* radial = app.add_subcommand(
      "radial", "sample the rotationally symmetric solution profile");
  add_common(radial, "unused for this subcommand");
  CLI::App* serrin = app.add_subcommand(
      "serrin-check",
      "classify constant-data problems with a slope condition on the outer "
      "boundary; exit code is the verdict");
  add_common(serrin, "unused for this subcommand");
  CLI::App* bernoulli = app.add_subcommand(
      "bernoulli-check",
      "classify annular free-boundary-type problems; exit code is the verdict");
  add_common(bernoulli, "unused for this subcommand");
  CLI::App* pde = app.add_subcommand(
      "pde-solve", "direct 2d Dirichlet solve on a star-shaped domain");
  add_common(pde, "relative residual tolerance (default 1e-10)");
  CLI::App* ctx = app.add_subcommand(
      "counterexample",
      "ellipse boundary-slope table grouped by center distance, with the "
      "radial criteria evaluated on the recorded data");
  add_common(ctx, "unused for this subcommand");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (radial->parsed()) return run_radial(args);
    if (serrin->parsed()) return run_check(args, false);
    if (bernoulli->parsed()) return run_check(args, true);
    if (pde->parsed()) return run_pde(args);
    if (ctx->parsed()) return run_counterexample(args);
  } catch (const CliFailure& f) {
    std::fputs(f.message.c_str(), stderr);
    return f.exit_code;
  }
  return kExitConfig;
}
