// toriclass: census, code analysis, equivalence and reproduction runs.
//
// Exit codes: compare returns 0 Equivalent, 1 Inequivalent, 2 Unknown;
// reproduce returns 1 if any criterion fails; usage or library errors give 3.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toriclass/catalog.hpp"
#include "toriclass/code.hpp"
#include "toriclass/equiv.hpp"
#include "toriclass/json_io.hpp"
#include "toriclass/lattice.hpp"
#include "toriclass/minkowski.hpp"
#include "toriclass/reproduce.hpp"

using namespace toriclass;

namespace {

constexpr int kErrorExit = 3;

struct RunConfig {
  int k = 7;
  std::vector<std::int64_t> q;
  std::vector<std::string> ids;
  std::string file;
  std::string a, b;
  double budget = kDefaultBudget;
  unsigned threads = 0;
  std::string format = "text";
  std::string out;
  bool enumerator = false;
  bool long_run = false;
};

struct Target {
  std::string label;
  LatticePolytope polygon;
  std::optional<ClassId> id;
};

// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void validate(const RunConfig& c) {
  if (c.budget <= 0) throw InvalidParams("--budget must be positive");
  for (auto q : c.q) static_cast<void>(FieldSpec{q});  // throws NotPrimePower
  if (c.format != "text" && c.format != "json" && c.format != "csv")
    throw InvalidParams("--format must be text, json or csv");
}

Target target_from_id(const std::string& s) {
  const ClassId id = parse_class_id(s);
  return {to_string(id), get_polygon(id), id};
}

std::vector<Target> targets(const RunConfig& c, bool all_if_empty = false) {
  std::vector<Target> out;
  for (const auto& s : c.ids) out.push_back(target_from_id(s));
  if (!c.file.empty()) {
    std::ifstream in(c.file);
    if (!in) throw ParseError("cannot open " + c.file);
    std::size_t line = 0;
    for (const auto& r : parse_records(in)) {
      ++line;
      const auto id = Catalog::instance().identify(r.polytope);
      std::string label = r.id > 0 ? "k" + std::to_string(r.k) + "#" + std::to_string(r.id)
                                   : c.file + ":" + std::to_string(line);
      out.push_back({label, r.polytope, id});
    }
  }
  if (out.empty() && all_if_empty)
    for (const auto& e : Catalog::instance().entries()) out.push_back({to_string(e.id), e.polytope, e.id});
  if (out.empty()) throw InvalidParams("select a polygon with --id or --file");
  return out;
}

// --- enumerate ----------------------------------------------------------------

int cmd_enumerate(const RunConfig& c) {
  if (c.k < 1) throw InvalidParams("--k must be at least 1");
  if (c.k > 8) std::cerr << "warning: k = " << c.k << " is beyond the tested range; this may take long\n";
  auto classes = enumerate_classes(c.k);
  // Catalog numbering for k = 6, 7; census order otherwise.
  std::vector<PolytopeRecord> recs;
  int next = 1;
  for (auto& P : classes) {
    int id = next++;
    if (c.k == 6 || c.k == 7)
      if (auto cid = Catalog::instance().identify(P)) id = cid->index;
    recs.push_back({c.k, id, std::move(P)});
  }
  std::sort(recs.begin(), recs.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
  const std::string path = c.out.empty() ? "census_k" + std::to_string(c.k) + ".txt" : c.out;
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  for (const auto& r : recs) f << format_record(r) << "\n";
  if (c.format == "json") {
    std::cout << Json{{"k", c.k}, {"count", recs.size()}, {"file", path}}.dump() << "\n";
  } else {
    std::cout << recs.size() << "\n";
  }
  return 0;
}

// --- show ---------------------------------------------------------------------

Json polygon_json(const Target& t) {
  const auto& P = t.polygon;
  Json j{{"label", t.label}, {"k", P.size()}, {"dim", P.dim()}, {"points", points_json(P)}};
  Json hull = Json::array();
  for (const auto& v : P.hull_vertices()) hull.push_back(Json::array({v.x, v.y}));
  j["hull"] = hull;
  j["canonical"] = points_json(canonical(P));
  if (P.dim() >= 1) j["full_minkowski_length"] = full_minkowski_length(P);
  if (P.dim() == 2) {
    j["area"] = to_string(area(P));
    j["boundary_points"] = P.boundary_count();
    j["interior_points"] = P.interior_count();
    j["primitive_edges"] = primitive_edge_count(P);
    j["exceptional_obstruction"] = has_exceptional_obstruction(P);
  }
  j["fit_q_min"] = fit_q_min(P);
  if (t.id) j["catalog"] = catalog_entry_json(Catalog::instance().entry(*t.id));
  return j;
}

int cmd_show(const RunConfig& c) {
  Output out(c.out);
  const auto ts = targets(c, true);
  if (c.format == "json") {
    if (c.ids.empty() && c.file.empty()) {
      out.get() << catalog_json(Catalog::instance()).dump(2) << "\n";
      return 0;
    }
    Json a = Json::array();
    for (const auto& t : ts) a.push_back(polygon_json(t));
    out.get() << a.dump(2) << "\n";
    return 0;
  }
  for (const auto& t : ts) {
    if (c.format == "csv" || !t.id) {
      out.get() << (t.id ? format_record({t.id->k, t.id->index, t.polygon}) : t.label + " " + format_points(t.polygon))
                << "\n";
      continue;
    }
    out.get() << format_record({t.id->k, t.id->index, t.polygon});
    const auto& e = Catalog::instance().entry(*t.id);
    if (e.distance)
      out.get() << "  d=" << e.distance->text << " ("
                << (e.distance->q_min ? "q >= " + std::to_string(e.distance->q_min) : std::string("all q")) << ")";
    out.get() << "\n";
  }
  return 0;
}

// --- analyze ------------------------------------------------------------------

Json bounds_json(const LatticePolytope& P, std::int64_t q) {
  Json j;
  if (P.dim() < 2) {
    j["ss"] = Json{{"error", "NotPolygon"}};
    return j;
  }
  try {
    j["ss"] = to_json(ss_lower_bound(P, q));
  } catch (const ThresholdNotMet& e) {
    j["ss"] = error_json(e);
  }
  return j;
}

Json analyze_one(const Target& t, std::int64_t q, const RunConfig& c, std::string* csv) {
  Json j{{"polygon", t.label}, {"q", q}};
  const auto& P = t.polygon;
  j["k"] = P.size();
  j["n"] = (q - 1) * (q - 1);
  if (P.dim() >= 1) j["L"] = full_minkowski_length(P);
  if (P.dim() == 2)
    j["pick"] = Json{{"area", to_string(area(P))},
                     {"boundary", P.boundary_count()},
                     {"interior", P.interior_count()},
                     {"pick_area", to_string(pick_area(P.boundary_count(), P.interior_count()))}};
  j["bounds"] = bounds_json(P, q);
  if (t.id) {
    const auto e = expected_min_distance(*t.id, q);
    j["expected_d"] = to_string(e);
  }
  try {
    const auto F = build_field(q);
    const auto C = build_code(P, F);
    j["field"] = to_json(*F);
    const auto W = weight_distribution(C, c.budget, c.threads);
    const auto s = special_weight_counts(W, q);
    const std::int64_t d = W.min_distance();
    j["d"] = d;
    j["n1"] = s.n1;
    j["n2"] = s.n2;
    j["n3"] = s.n3;
    if (t.id) {
      const auto e = expected_min_distance(*t.id, q);
      bool mismatch = false;
      if (e.kind == DistanceKind::Exact) mismatch = d != e.value;
      if (e.kind == DistanceKind::Interval) mismatch = !(d > e.lo_excl && d <= e.hi);
      j["expected_mismatch"] = mismatch;
    }
    if (c.enumerator) {
      j["enumerator"] = enumerator_json(W);
      j["enumerator_text"] = format_enumerator(W, t.id ? padded_label(*t.id) : t.label, q);
    }
    if (csv) *csv = code_csv_row(t.label, q, W, C.k());
  } catch (const DoesNotFit& e) {
    j["enumeration"] = error_json(e);
    j["hint"] = "polygon needs q >= " + std::to_string(e.q_min());
  } catch (const TooLarge& e) {
    j["enumeration"] = error_json(e);
    j["hint"] = "enumeration refused; raise --budget above " + std::to_string(e.required()) +
                " or rely on the bounds report";
  }
  return j;
}

int cmd_analyze(const RunConfig& c) {
  if (c.q.empty()) throw InvalidParams("analyze needs --q");
  Output out(c.out);
  Json all = Json::array();
  if (c.format == "csv") out.get() << code_csv_header() << "\n";
  for (const auto& t : targets(c))
    for (auto q : c.q) {
      std::string row;
      Json j = analyze_one(t, q, c, &row);
      if (c.format == "csv") {
        if (!row.empty()) out.get() << row << "\n";
        else std::cerr << t.label << " q=" << q << ": " << j.value("hint", std::string("not enumerated")) << "\n";
      } else if (c.format == "json") {
        all.push_back(j);
      } else {
        out.get() << t.label << " q=" << q << " n=" << j["n"] << " k=" << j["k"];
        if (j.contains("d")) {
          out.get() << " d=" << j["d"] << " n1=" << j["n1"] << " n2=" << j["n2"] << " n3=" << j["n3"];
          if (j.contains("expected_d")) out.get() << " expected=" << j["expected_d"].get<std::string>();
          if (j.value("expected_mismatch", false)) out.get() << " MISMATCH";
        } else {
          out.get() << " (" << j["hint"].get<std::string>() << ")";
        }
        out.get() << " bounds=" << j["bounds"].dump() << "\n";
        if (j.contains("enumerator_text")) out.get() << j["enumerator_text"].get<std::string>() << "\n";
      }
    }
  if (c.format == "json") out.get() << all.dump(2) << "\n";
  return 0;
}

// --- compare ------------------------------------------------------------------

int cmd_compare(const RunConfig& c) {
  if (c.q.size() != 1) throw InvalidParams("compare needs exactly one --q");
  std::vector<std::string> names{c.a, c.b};
  if (c.a.empty() || c.b.empty()) {
    if (c.ids.size() != 2) throw InvalidParams("compare needs --a and --b (or two --id)");
    names = c.ids;
  }
  const auto F = build_field(c.q[0]);
  const auto t1 = target_from_id(names[0]), t2 = target_from_id(names[1]);
  const auto C1 = build_code(t1.polygon, F), C2 = build_code(t2.polygon, F);
  EquivalenceOptions opt;
  opt.enumeration_budget = c.budget;
  opt.threads = c.threads;
  EquivalenceVerdict v;
  try {
    v = find_monomial_equivalence(C1, C2, opt);
  } catch (const TooLarge& e) {
    v.kind = EquivalenceVerdict::Kind::Unknown;
    v.certificate = "enumeration_budget";
    v.value1 = e.what();
  }
  Json j = to_json(v);
  j["a"] = t1.label;
  j["b"] = t2.label;
  j["q"] = c.q[0];
  if (v.witness) j["witness_verified"] = verify_witness(C1, C2, *v.witness);
  Output out(c.out);
  if (c.format == "text") {
    out.get() << t1.label << " vs " << t2.label << " over F_" << c.q[0] << ": " << to_string(v.kind) << " ("
              << v.certificate;
    if (!v.value1.empty() || !v.value2.empty()) out.get() << ": " << v.value1 << " vs " << v.value2;
    out.get() << ")\n";
  } else {
    out.get() << j.dump() << "\n";
  }
  switch (v.kind) {
    case EquivalenceVerdict::Kind::Equivalent: return 0;
    case EquivalenceVerdict::Kind::Inequivalent: return 1;
    default: return 2;
  }
}

// --- bounds -------------------------------------------------------------------

int cmd_bounds(const RunConfig& c) {
  if (c.q.empty()) throw InvalidParams("bounds needs --q");
  Output out(c.out);
  Json all = Json::array();
  for (const auto& t : targets(c))
    for (auto q : c.q) {
      Json j{{"polygon", t.label}, {"q", q}};
      j.update(bounds_json(t.polygon, q));
      if (t.id) j["expected_d"] = to_string(expected_min_distance(*t.id, q));
      if (c.format == "text") out.get() << j.dump() << "\n";
      else all.push_back(j);
    }
  if (c.format != "text") out.get() << all.dump(2) << "\n";
  return 0;
}

// --- reproduce ----------------------------------------------------------------

Json stretch_pair(const RunConfig& c) {
  // P7_4 vs P7_5 over F_29; exhaustive profiles exceed the default budget.
  const std::int64_t q = 29;
  Json j{{"a", "P7_4"}, {"b", "P7_5"}, {"q", q}};
  try {
    const auto F = build_field(q);
    EquivalenceOptions opt;
    opt.enumeration_budget = c.budget;
    opt.threads = c.threads;
    const auto v = find_monomial_equivalence(build_code(get_polygon({7, 4}), F), build_code(get_polygon({7, 5}), F), opt);
    j.update(to_json(v));
  } catch (const TooLarge& e) {
    j["verdict"] = "Unknown";
    j["reason"] = error_json(e);
  }
  return j;
}

int cmd_reproduce(const RunConfig& c) {
  ReproduceOptions o;
  o.threads = c.threads;
  o.budget = c.budget;
  o.data_dir = resolve_data_dir();
  o.log = [](const std::string& line) { std::cout << line << std::endl; };
  std::vector<FamilyAudit> audits;
  std::vector<PairVerdict> pairs;
  detail::DistributionCache cache(o.budget, o.threads);
  std::vector<CriterionResult> rs;
  rs.push_back(check_census(o));
  rs.push_back(check_table1(o));
  rs.push_back(check_golden(o));
  rs.push_back(check_table2(o, cache));
  rs.push_back(check_exceptional_pairs(o, &pairs));
  rs.push_back(check_k6_pairs(o));
  rs.push_back(check_family_audits(o, &audits));
  rs.push_back(check_properties(o));
  rs.push_back(check_bounds(o, cache));
  std::size_t failed = 0;
  for (const auto& r : rs) failed += !r.passed;
  std::optional<Json> stretch;
  if (c.long_run) {
    stretch = stretch_pair(c);
    std::cout << "INFO stretch P7_4 vs P7_5 over F_29: " << (*stretch)["verdict"].get<std::string>() << "\n";
  }
  std::cout << (rs.size() - failed) << "/" << rs.size() << " criteria passed\n";
  if (!c.out.empty()) {
    std::filesystem::create_directories(c.out);
    Json report = Json::array();
    for (const auto& r : rs)
      report.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
    Json doc{{"criteria", report}};
    if (stretch) doc["stretch"] = *stretch;
    std::ofstream(c.out + "/report.json") << doc.dump(2) << "\n";
    std::ofstream csv(c.out + "/family_audit.csv");
    csv << family_audit_csv_header() << "\n";
    for (const auto& a : audits)
      if (a.applies) csv << family_audit_csv_row(a) << "\n";
    Json pj = Json::array();
    for (const auto& p : pairs) {
      Json x = to_json(p.verdict);
      x.erase("witness");
      x["a"] = to_string(p.a);
      x["b"] = to_string(p.b);
      x["q"] = p.q;
      pj.push_back(x);
    }
    std::ofstream(c.out + "/pairs.json") << pj.dump(2) << "\n";
  }
  return failed ? 1 : 0;
}

void add_common(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--budget", c.budget, "column-operation budget for exhaustive enumeration");
  cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  cmd->add_option("--format", c.format, "json, csv or text");
  cmd->add_option("--out", c.out, "output path");
}

void add_selectors(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--id", c.ids, "catalog id such as P7_5")->delimiter(',');
  cmd->add_option("--file", c.file, "polytope text file");
  cmd->add_option("--q", c.q, "field order(s)")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric surface code classification toolkit"};
  app.require_subcommand(1);
  RunConfig c;

  auto* en = app.add_subcommand("enumerate", "lattice polygon census by lattice-point count");
  en->add_option("--k", c.k, "number of lattice points")->required();
  add_common(en, c);

  auto* sh = app.add_subcommand("show", "print catalog polygons and their metadata");
  add_selectors(sh, c);
  add_common(sh, c);

  auto* an = app.add_subcommand("analyze", "parameters, enumerator and bounds of toric codes");
  add_selectors(an, c);
  an->add_flag("--enumerator", c.enumerator, "include the weight enumerator");
  add_common(an, c);

  auto* cm = app.add_subcommand("compare", "monomial equivalence of two catalog codes");
  cm->add_option("--a", c.a, "first catalog id");
  cm->add_option("--b", c.b, "second catalog id");
  add_selectors(cm, c);
  add_common(cm, c);

  auto* bd = app.add_subcommand("bounds", "closed-form distance bounds");
  add_selectors(bd, c);
  add_common(bd, c);

  auto* rp = app.add_subcommand("reproduce", "run every acceptance criterion");
  rp->add_flag("--long", c.long_run, "also attempt the F_29 stretch pair");
  add_common(rp, c);

  CLI11_PARSE(app, argc, argv);

  try {
    validate(c);
    c.threads = detail::resolve_threads(c.threads);
    if (const char* env = std::getenv("TORICLASS_DATA"); env && *env) {
      const std::filesystem::path p(env);
      if (std::filesystem::is_regular_file(p) || std::filesystem::exists(p / "catalog.txt"))
        load_catalog_overrides(p.string());
    }
    if (en->parsed()) return cmd_enumerate(c);
    if (sh->parsed()) return cmd_show(c);
    if (an->parsed()) return cmd_analyze(c);
    if (cm->parsed()) return cmd_compare(c);
    if (bd->parsed()) return cmd_bounds(c);
    if (rp->parsed()) return cmd_reproduce(c);
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << "\n";
    return kErrorExit;
  }
  return kErrorExit;
}
