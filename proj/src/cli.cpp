#include "rigidan/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rigidan/errors.hpp"
#include "rigidan/selftest.hpp"
#include "rigidan/serialize.hpp"

namespace rigidan {

namespace {

struct Globals {
  long p = 5;
  int precision = 40;
  int degree = 64;
  int slack = 4;
  std::uint64_t seed = 1;
  std::string format = "json";
  int count = 50;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  if (s.find_first_not_of(" \t\r\n") == std::string::npos) throw UsageError("'" + path + "' is empty");
  return s;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw UsageError("cannot write '" + path + "'");
  o << text;
}

void same_context(const ContextPtr& a, const ContextPtr& b) {
  if (!a->same_parameters(*b)) throw MismatchError("input files use different p-adic contexts");
}

std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, scalar(j));
  }
}

bool is_table(const json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& e : j)
    if (!e.is_object()) return false;
  return true;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const json& report, const std::string& format) {
  if (format == "json") return canonical(report);
  std::ostringstream o;
  if (format == "text") {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    for (const auto& [k, v] : rows) o << k << ": " << v << "\n";
    return o.str();
  }
  // csv: scalar fields as key,value; arrays of records as tables.
  std::vector<std::pair<std::string, std::string>> rows;
  std::vector<std::pair<std::string, const json*>> tables;
  for (auto it = report.begin(); it != report.end(); ++it) {
    if (is_table(it.value()))
      tables.emplace_back(it.key(), &it.value());
    else
      flatten(it.value(), it.key(), rows);
  }
  o << "key,value\n";
  for (const auto& [k, v] : rows) o << csv_cell(k) << "," << csv_cell(v) << "\n";
  for (const auto& [name, t] : tables) {
    std::vector<std::map<std::string, std::string>> records;
    std::set<std::string> columns;
    for (const auto& e : *t) {
      std::vector<std::pair<std::string, std::string>> cells;
      flatten(e, "", cells);
      records.emplace_back(cells.begin(), cells.end());
      for (const auto& c : cells) columns.insert(c.first);
    }
    o << "\n# " << name << "\n";
    bool first = true;
    for (const auto& c : columns) o << (first ? "" : ",") << csv_cell(c), first = false;
    o << "\n";
    for (const auto& r : records) {
      first = true;
      for (const auto& c : columns) {
        auto it = r.find(c);
        o << (first ? "" : ",") << (it == r.end() ? "" : csv_cell(it->second));
        first = false;
      }
      o << "\n";
    }
  }
  return o.str();
}

json tristate(Tristate t) {
  if (t == Tristate::yes) return true;
  if (t == Tristate::no) return false;
  return "indeterminate";
}

std::string margin_text(const Valuation& v) {
  if (v.is_finite() && v.value() == LONG_MIN) return "-inf";
  return v.to_string();
}

// ---------------------------------------------------------------- commands

int cmd_classify(const Globals& g, const ContextPtr& ctx, const std::string& path, int bound, std::ostream& out) {
  const DataFile f = parse_file(read_file(path), "parameter", ctx);
  const TriangulineParam s = trianguline_from_json(f.ctx, f.payload);
  const SStar star = in_S_star(s);
  const SCris cris = in_S_cris(s);
  const Ext1 ext = ext1_dimension(s.delta1, s.delta2, bound);
  json r;
  r["S_star"] = star.member;
  r["S_cris"] = tristate(cris.status);
  r["S_cris_reason"] = cris.reason;
  r["u"] = star.u;
  const IntegerTest w = as_integer(star.w);
  if (w.status == Tristate::yes)
    r["w"] = w.value.get_si();
  else
    r["w"] = to_json(star.w);
  r["scriptL"] = s.scriptL ? json(*s.scriptL) : json("inf");
  r["ext1_dimension"] = ext.dimension;
  r["ext1_form"] = ext.form.empty() ? json(nullptr) : json(ext.form);
  r["ext1_certain"] = tristate(ext.certain);
  out << render(r, g.format);
  return kOk;
}

DataFile parse_function_file(const std::string& text, const ContextPtr& ctx, bool& is_series) {
  const json j = json::parse(text, nullptr, false);
  is_series = j.is_object() && j.contains("series");
  return parse_file(text, is_series ? "series" : "function", ctx);
}

int cmd_act(const ContextPtr& ctx, const std::string& g_path, const std::string& f_path, const std::string& chi_path,
            const std::string& out_path, std::ostream& out, std::ostream& err) {
  const DataFile gf = parse_file(read_file(g_path), "matrix", ctx);
  bool is_series = false;
  const DataFile ff = parse_function_file(read_file(f_path), ctx, is_series);
  const DataFile cf = parse_file(read_file(chi_path), "character", ctx);
  same_context(gf.ctx, ff.ctx);
  same_context(gf.ctx, cf.ctx);
  const auto& c = ff.ctx;
  const Matrix2 m = matrix_from_json(c, gf.payload);
  const InductionCharacter chi = character_from_json(c, cf.payload);
  const IwahoriElement g(m);
  json result;
  std::string before, after;
  if (is_series) {
    const TateSeries f = series_from_json(c, ff.payload);
    const TateSeries r = act(g, f, chi);
    before = val_C(f).to_string();
    after = val_C(r).to_string();
    result = make_file(*c, "series", to_json(r));
  } else {
    const PiecewiseFunction f = function_from_json(c, ff.payload);
    const PiecewiseFunction r = act(g, f, chi);
    Valuation vb = Valuation::infinity(), va = Valuation::infinity();
    for (const auto& l : f.leaves()) vb = min(vb, val_C(l.series));
    for (const auto& l : r.leaves()) va = min(va, val_C(l.series));
    before = vb.to_string();
    after = va.to_string();
    result = make_file(*c, "function", to_json(r));
  }
  const std::string text = canonical(result);
  if (out_path.empty()) {
    out << text;
    err << "val_C before: " << before << "\nval_C after: " << after << "\n";
  } else {
    write_file(out_path, text);
    out << "val_C before: " << before << "\nval_C after: " << after << "\n";
  }
  return kOk;
}

int cmd_analytic_level(const Globals& g, const ContextPtr& ctx, const std::string& path, int m, std::ostream& out) {
  bool is_series = false;
  const DataFile ff = parse_function_file(read_file(path), ctx, is_series);
  const PiecewiseFunction f = is_series ? PiecewiseFunction::global(series_from_json(ff.ctx, ff.payload))
                                        : function_from_json(ff.ctx, ff.payload);
  json levels = json::array();
  json least = nullptr;
  const int lo = m >= 0 ? m : 0;
  const int hi = m >= 0 ? m : f.max_level();
  for (int level = lo; level <= hi; ++level) {
    const AnalyticVerdict v = is_analytic_vector(f, level);
    json row = {{"m", level}, {"reexpansion", tristate(v.status)}, {"orbit", tristate(v.orbit)}};
    if (v.witness) row["witness"] = to_json(*v.witness);
    levels.push_back(row);
    if (least.is_null() && v.status == Tristate::yes) least = level;
  }
  out << render({{"levels", levels}, {"least_level", least}}, g.format);
  return kOk;
}

int cmd_verify_bounds(const Globals& g, const ContextPtr& ctx, const std::string& path, int m, int corrupt_index,
                      const std::string& corrupt_family, std::ostream& out, std::ostream& err) {
  const DataFile ff = parse_file(read_file(path), "series", ctx);
  const TateSeries f0 = series_from_json(ff.ctx, ff.payload);
  if (m < 0) m = f0.level();
  if (f0.level() > m) throw DomainError("series level exceeds m");
  const TateSeries f = f0.restricted_to(m);
  BoundsReport report{m, {}, true};
  bool corrupted = false;
  for (OrbitFamily family : kOrbitFamilies) {
    OrbitExpansion e = orbit_expansion(family, f, m);
    if (corrupt_index >= 0 && to_string(family) == corrupt_family) {
      if (corrupt_index >= static_cast<int>(e.coefficients.size())) throw UsageError("corrupt index out of range");
      auto& c = e.coefficients[static_cast<std::size_t>(corrupt_index)];
      c = c + TateSeries::constant(PadicNumber::from_int(f.context(), 1), m);
      corrupted = true;
    }
    check_expansion(f, e, report);
  }
  if (corrupt_index >= 0 && !corrupted) throw UsageError("unknown orbit family '" + corrupt_family + "'");
  json entries = json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"family", to_string(e.family)},
                       {"index", e.index},
                       {"val_C", to_json(e.val_C)},
                       {"bound", to_json(e.bound)},
                       {"margin", margin_text(e.margin)},
                       {"ok", e.ok}});
  out << render({{"m", m}, {"ok", report.ok}, {"entries", entries}}, g.format);
  if (const BoundEntry* e = report.first_violation()) {
    err << "estimate violated: family " << to_string(e->family) << ", index " << e->index << "\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_cokernel(const Globals& g, const ContextPtr& ctx, const std::string& p1, const std::string& p2,
                 std::ostream& out) {
  const DataFile a = parse_file(read_file(p1), "cokernel", ctx);
  const DataFile b = parse_file(read_file(p2), "cokernel", ctx);
  same_context(a.ctx, b.ctx);
  const CokernelElement c1 = cokernel_from_json(a.ctx, a.payload);
  const CokernelElement c2 = cokernel_from_json(a.ctx, b.payload);
  const Tristate t = cokernel_equal(c1, c2);
  out << render({{"equal", tristate(t)}, {"embedding", "beta"}}, g.format);
  return kOk;
}

int cmd_witness(const ContextPtr& ctx, const std::string& alpha, const std::string& beta, int k, int n, int m,
                const std::string& policy, std::ostream& out, std::ostream& err) {
  ParameterPolicy pol;
  if (policy == "strict")
    pol = ParameterPolicy::strict;
  else if (policy == "structural")
    pol = ParameterPolicy::structural;
  else
    throw UsageError("policy must be strict or structural");
  const Witness w =
      witness_nonzero(PadicNumber::parse(ctx, alpha), PadicNumber::parse(ctx, beta), k, n, m, pol);
  out << canonical(make_file(*ctx, "cokernel", to_json(w.element)));
  err << "equals zero: " << to_string(w.equals_zero) << "\n";
  return kOk;
}

int cmd_selftest(const Globals& g, const ContextPtr& ctx, const std::vector<std::string>& only, std::ostream& out) {
  if (g.count < 1) throw UsageError("--count must be >= 1");
  for (const auto& s : only) {
    const auto all = selftest_suites();
    if (std::find(all.begin(), all.end(), s) == all.end()) throw UsageError("unknown suite '" + s + "'");
  }
  const json report = run_selftest({ctx, g.seed, g.count, only});
  out << render(report, g.format);
  return report["ok"].get<bool>() ? kOk : kVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic rigid analytic vectors toolkit", "rigidan"};
  Globals g;
  app.add_option("--p", g.p, "odd prime")->capture_default_str();
  app.add_option("--precision", g.precision, "relative precision N")->capture_default_str();
  app.add_option("--degree", g.degree, "series truncation degree D")->capture_default_str();
  app.add_option("--slack", g.slack, "comparison slack")->capture_default_str();
  app.add_option("--seed", g.seed, "generator seed")->capture_default_str();
  app.add_option("--format", g.format, "report format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--count", g.count, "cases per selftest suite")->capture_default_str();
  app.require_subcommand(1);
  app.fallthrough();

  std::string f1, f2, f3, out_path, family = "mobius", alpha, beta, policy = "strict";
  int m = -1, k = 0, n = 1, corrupt = -1, bound = kDefaultExt1Bound, wm = 2;
  std::vector<std::string> only;

  auto* classify = app.add_subcommand("classify", "classify a trianguline parameter file");
  classify->add_option("file", f1)->required();
  classify->add_option("--bound", bound, "ext1 search bound")->capture_default_str();

  auto* act_cmd = app.add_subcommand("act", "act by a matrix on a series or function");
  act_cmd->add_option("matrix", f1)->required();
  act_cmd->add_option("function", f2)->required();
  act_cmd->add_option("character", f3)->required();
  act_cmd->add_option("--out", out_path, "write the result here");

  auto* level = app.add_subcommand("analytic-level", "test G(m)-analyticity");
  level->add_option("file", f1)->required();
  level->add_option("--m", m, "single level to test (default: scan)");

  auto* bounds = app.add_subcommand("verify-bounds", "check the orbit-expansion estimates");
  bounds->add_option("file", f1)->required();
  bounds->add_option("--m", m, "level (default: the series level)");
  bounds->add_option("--corrupt-index", corrupt, "test hook: perturb this expansion term");
  bounds->add_option("--corrupt-family", family, "family for --corrupt-index")->capture_default_str();

  auto* coker = app.add_subcommand("cokernel-eq", "compare two cokernel classes");
  coker->add_option("first", f1)->required();
  coker->add_option("second", f2)->required();

  auto* wit = app.add_subcommand("witness", "emit the nonzero cokernel witness");
  wit->add_option("--alpha", alpha)->required();
  wit->add_option("--beta", beta)->required();
  wit->add_option("--k", k)->required();
  wit->add_option("--n", n)->capture_default_str();
  wit->add_option("--m", wm)->capture_default_str();
  wit->add_option("--policy", policy)->capture_default_str();

  auto* self = app.add_subcommand("selftest", "run the seeded property suites");
  self->add_option("--suite", only, "restrict to these suites");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    ContextPtr ctx;
    try {
      ctx = PadicContext::create(g.p, g.precision, g.degree, g.slack);
    } catch (const ParameterError& e) {
      err << "usage error: " << e.what() << "\n";
      return kUsage;
    }
    if (*classify) return cmd_classify(g, ctx, f1, bound, out);
    if (*act_cmd) return cmd_act(ctx, f1, f2, f3, out_path, out, err);
    if (*level) return cmd_analytic_level(g, ctx, f1, m, out);
    if (*bounds) return cmd_verify_bounds(g, ctx, f1, m, corrupt, family, out, err);
    if (*coker) return cmd_cokernel(g, ctx, f1, f2, out);
    if (*wit) return cmd_witness(ctx, alpha, beta, k, n, wm, policy, out, err);
    if (*self) return cmd_selftest(g, ctx, only, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    err << "malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const MismatchError& e) {
    err << "parameter mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const ParameterError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kDomain;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const DivisionError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}

}  // namespace rigidan
