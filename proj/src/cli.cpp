#include "homgrow/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "homgrow/bounds.hpp"
#include "homgrow/census.hpp"
#include "homgrow/cochain_lab.hpp"
#include "homgrow/cover.hpp"
#include "homgrow/epimorphism.hpp"
#include "homgrow/errors.hpp"
#include "homgrow/presentation.hpp"
#include "homgrow/series.hpp"

namespace homgrow {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "v1";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::uint32_t p = 2;
  std::uint64_t budget = kDefaultCellBudget;
  std::string format = "text";
  std::string epi;
  std::string witnesses;
};

/// Rows for CSV and text; the text form adds the preamble and footnotes.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool vertical = false;  // text: one "name: value" line per column
};

struct Report {
  Json json;
  Table table;
  std::vector<std::string> preamble;
  std::vector<std::string> footnotes;
  int status = kExitOk;
};

Json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(v.str());
}

std::string rational_text(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

Json interval_json(const Interval& a, int digits = 6) {
  Json j;
  j["lo"] = to_decimal(a.lo, digits);
  j["hi"] = to_decimal(a.hi, digits);
  j["exact"] = a.exact();
  if (a.exact()) j["value"] = rational_text(a.lo);
  return j;
}

std::string interval_text(const Interval& a, int digits = 6) {
  if (a.exact()) return rational_text(a.lo);
  return "[" + to_decimal(a.lo, digits) + ", " + to_decimal(a.hi, digits) + "]";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv(std::ostream& out, const Table& t) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_field(cells[i]);
    }
    out << "\r\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

void write_text(std::ostream& out, const Report& r) {
  for (const auto& l : r.preamble) out << l << '\n';
  const Table& t = r.table;
  if (t.vertical) {
    std::size_t w = 0;
    for (const auto& h : t.header) w = std::max(w, h.size());
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < t.header.size(); ++i) {
        out << t.header[i] << ':' << std::string(w - t.header[i].size() + 1, ' ') << row[i]
            << '\n';
      }
    }
  } else if (!t.header.empty()) {
    std::vector<std::size_t> w(t.header.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.header[i].size();
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) s += "  ";
        s += std::string(w[i] - cells[i].size(), ' ') + cells[i];
      }
      out << s << '\n';
    };
    line(t.header);
    for (const auto& row : t.rows) line(row);
  }
  for (const auto& f : r.footnotes) out << f << '\n';
}

void emit(std::ostream& out, const Config& cfg, const Report& r) {
  if (cfg.format == "json") {
    out << r.json.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    write_csv(out, r.table);
  } else {
    write_text(out, r);
  }
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

PresentationFile load_file(const std::string& path) {
  return parse_presentation_file(read_file(path));
}

/// --epi wins over an epi: block in the file; both default to the full
/// mod-p projection.
Epimorphism resolve_epi(const PresentationFile& file, const Config& cfg) {
  const Presentation& pres = file.presentation;
  std::string text = cfg.epi;
  if (text.empty() && file.epi_text) text = *file.epi_text;
  if (text.empty() || text == "full") return full_mod_p_epi(pres, cfg.p);
  Epimorphism epi = parse_epimorphism(text, cfg.p, pres.generator_count());
  validate_epimorphism(pres, epi);
  return epi;
}

Json base_json(const std::string& command, const Config& cfg) {
  Json j;
  j["schema"] = std::string("homgrow/") + kSchemaVersion + "/" + command;
  j["command"] = command;
  j["p"] = cfg.p;
  return j;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string clamp_text(const BigInt& v, bool& clamped) {
  if (v < 0) {
    clamped = true;
    return "0*";
  }
  return v.str();
}

constexpr const char* kClampNote =
    "* negative bound, shown as 0 (the raw value is in the csv and json output)";

// analyze ------------------------------------------------------------------

Report cmd_analyze(const std::string& path, const Config& cfg) {
  const Presentation pres = load_file(path).presentation;
  const Section8Report s8 = check_section8_conditions(pres, cfg.p);
  const ComplexBetti& b = s8.betti;
  Report r;
  r.json = base_json("analyze", cfg);
  r.json["generators"] = pres.generator_count();
  r.json["relators"] = pres.relator_count();
  r.json["b0"] = b.b0;
  r.json["b1"] = b.b1;
  r.json["b2"] = b.b2;
  r.json["deficiency"] = deficiency(pres);
  Json c;
  c["b2_minus_b1"] = s8.b2_minus_b1;
  c["b2_over_b1_plus_1"] = rational_text(s8.b2_over_b1_plus_1);
  c["b2_le_b1"] = s8.b2_le_b1;
  c["b2_minus_b1_le_minus1"] = s8.b2_minus_b1_le_minus1;
  c["b2_le_2b1_minus_2"] = s8.b2_le_2b1_minus_2;
  r.json["conditions"] = c;
  r.table.vertical = true;
  r.table.header = {"generators", "relators", "b0", "b1", "b2", "deficiency",
                    "b2_le_b1", "b2_minus_b1_le_minus1", "b2_le_2b1_minus_2"};
  r.table.rows.push_back({std::to_string(pres.generator_count()),
                          std::to_string(pres.relator_count()), std::to_string(b.b0),
                          std::to_string(b.b1), std::to_string(b.b2),
                          std::to_string(deficiency(pres)), yes_no(s8.b2_le_b1),
                          yes_no(s8.b2_minus_b1_le_minus1), yes_no(s8.b2_le_2b1_minus_2)});
  return r;
}

// verify -------------------------------------------------------------------

Report cmd_verify(const std::string& path, const Config& cfg, bool sweep,
                  std::optional<std::uint64_t> level) {
  const PresentationFile file = load_file(path);
  const Presentation& pres = file.presentation;
  const ComplexBetti g = complex_betti(pres, cfg.p);
  std::vector<Epimorphism> epis;
  std::size_t skipped = 0;
  if (sweep) {
    for (std::uint32_t n = 1; n <= g.b1; ++n) {
      if (cover_cell_count(pres, Epimorphism{cfg.p, n, {}}) > cfg.budget) {
        skipped += all_epimorphisms(pres, cfg.p, n).size();
        continue;
      }
      for (auto& e : all_epimorphisms(pres, cfg.p, n)) epis.push_back(std::move(e));
    }
  } else {
    epis.push_back(resolve_epi(file, cfg));
  }
  Report r;
  r.json = base_json("verify", cfg);
  r.json["b1"] = g.b1;
  r.json["b2"] = g.b2;
  r.json["epimorphisms"] = Json::array();
  r.table.header = {"n", "epi", "level", "bound", "cover_b1", "holds"};
  std::size_t violations = 0;
  bool clamped = false;
  for (const Epimorphism& epi : epis) {
    const CoverComplex c = build_cover(pres, epi, cfg.budget);
    const ComplexBetti cb = cover_betti(c);
    const auto bounds = level_sweep(g.b1, g.b2, epi.n, cfg.p);
    Json e;
    e["n"] = epi.n;
    e["epi"] = format_epimorphism(epi);
    e["cover_b1"] = cb.b1;
    e["cover_b2"] = cb.b2;
    e["bounds"] = Json::array();
    e["violations"] = Json::array();
    for (std::uint64_t l = 0; l < bounds.size(); ++l) {
      if (level && *level != l) continue;
      const bool holds = BigInt(cb.b1) >= bounds[l];
      e["bounds"].push_back(Json{{"level", l}, {"bound", big(bounds[l])}});
      if (!holds) {
        e["violations"].push_back(l);
        ++violations;
      }
      r.table.rows.push_back({std::to_string(epi.n), format_epimorphism(epi),
                              std::to_string(l),
                              cfg.format == "text" ? clamp_text(bounds[l], clamped)
                                                   : bounds[l].str(),
                              std::to_string(cb.b1), yes_no(holds)});
    }
    const BestLevel best = best_level(g.b1, g.b2, epi.n, cfg.p);
    e["best_level"] = best.ell;
    e["best_bound"] = big(best.bound);
    r.json["epimorphisms"].push_back(e);
  }
  r.json["skipped"] = skipped;
  r.json["violations"] = violations;
  r.preamble.push_back("b1 = " + std::to_string(g.b1) + ", b2 = " + std::to_string(g.b2) +
                       " over F_" + std::to_string(cfg.p));
  if (clamped) r.footnotes.push_back(kClampNote);
  if (skipped > 0) {
    r.footnotes.push_back(std::to_string(skipped) +
                          " epimorphisms skipped: cover over the cell budget");
  }
  r.footnotes.push_back(violations == 0 ? "no violations"
                                        : std::to_string(violations) + " violations");
  if (violations > 0) r.status = kExitInvariant;
  return r;
}

// cover --------------------------------------------------------------------

Report cmd_cover(const std::string& path, const Config& cfg, bool rewrite) {
  const PresentationFile file = load_file(path);
  const Epimorphism epi = resolve_epi(file, cfg);
  const CoverComplex c = build_cover(file.presentation, epi, cfg.budget);
  const ComplexBetti b = cover_betti(c);
  Report r;
  r.json = base_json("cover", cfg);
  r.json["n"] = epi.n;
  r.json["epi"] = format_epimorphism(epi);
  r.json["vertices"] = c.vertex_count();
  r.json["edges"] = c.edge_count();
  r.json["faces"] = c.face_count();
  r.json["b0"] = b.b0;
  r.json["b1"] = b.b1;
  r.json["b2"] = b.b2;
  r.table.vertical = true;
  r.table.header = {"n", "epi", "vertices", "edges", "faces", "b0", "b1", "b2"};
  r.table.rows.push_back({std::to_string(epi.n), format_epimorphism(epi),
                          std::to_string(c.vertex_count()), std::to_string(c.edge_count()),
                          std::to_string(c.face_count()), std::to_string(b.b0),
                          std::to_string(b.b1), std::to_string(b.b2)});
  if (rewrite) {
    const Presentation sub = reidemeister_schreier(c);
    const std::string text = format_presentation(sub);
    r.json["subgroup"] = text;
    r.footnotes.push_back("subgroup presentation:");
    r.footnotes.push_back(text);
  }
  return r;
}

// cochains -----------------------------------------------------------------

Report cmd_cochains(const std::string& path, const Config& cfg,
                    std::optional<std::uint64_t> level) {
  const PresentationFile file = load_file(path);
  const Presentation& pres = file.presentation;
  const Epimorphism epi = resolve_epi(file, cfg);
  Witnesses wit;
  if (!cfg.witnesses.empty()) wit = parse_witnesses(read_file(cfg.witnesses), pres.generators);
  CochainLab lab(normalize_witnessed(pres, cfg.p, epi, std::nullopt, wit), epi, cfg.budget);
  const NormalizedPresentation& np = lab.normalized();
  auto names = [&](const std::vector<GeneratorId>& ids) {
    Json a = Json::array();
    for (GeneratorId g : ids) a.push_back(pres.generators[g]);
    return a;
  };
  Report r;
  r.json = base_json("cochains", cfg);
  r.json["n"] = lab.n();
  r.json["b1"] = lab.b1();
  r.json["x1"] = names(np.x1);
  r.json["x2"] = names(np.x2);
  r.json["x3"] = names(np.x3);
  r.json["r1"] = np.r1.size();
  r.json["r2"] = np.r2.size();
  r.json["r3"] = np.r3.size();
  r.json["levels"] = Json::array();
  r.table.header = {"level", "dim_U", "constraints", "dim_ker", "dim_C1ell_mod_B1",
                    "prop314_bound", "cocycle_check"};
  bool clamped = false;
  bool failed = false;
  for (std::size_t l = 0; l <= lab.n(); ++l) {
    if (level && *level != l) continue;
    const DimensionReport d = lab.dimension_report(l);
    const bool cocycles = d.face_violations == 0;
    const bool ok = cocycles && BigInt(d.dim_quotient) >= d.bound &&
                    d.dim_quotient == d.dim_quotient_dual && d.pairing_rank == d.test_loops;
    failed = failed || !ok;
    Json j;
    j["level"] = l;
    j["dim_U"] = d.dim_u;
    j["constraints"] = d.constraints;
    j["dim_ker"] = d.dim_kernel;
    j["dim_C1ell_mod_B1"] = d.dim_quotient;
    j["prop314_bound"] = big(d.bound);
    j["cocycle_check"] = cocycles ? "pass" : "fail";
    j["labels"] = d.labels;
    j["dim_C1"] = d.dim_c1;
    j["dim_C1ell_mod_B1_dual"] = d.dim_quotient_dual;
    j["test_loops"] = d.test_loops;
    j["pairing_rank"] = d.pairing_rank;
    r.json["levels"].push_back(j);
    r.table.rows.push_back({std::to_string(l), std::to_string(d.dim_u),
                            std::to_string(d.constraints), std::to_string(d.dim_kernel),
                            std::to_string(d.dim_quotient),
                            cfg.format == "text" ? clamp_text(d.bound, clamped) : d.bound.str(),
                            cocycles ? "pass" : "fail"});
  }
  r.preamble.push_back("X1 = " + std::to_string(np.x1.size()) + ", X2 = " +
                       std::to_string(np.x2.size()) + ", X3 = " + std::to_string(np.x3.size()) +
                       "; R1 = " + std::to_string(np.r1.size()) + ", R2 = " +
                       std::to_string(np.r2.size()) + ", R3 = " + std::to_string(np.r3.size()));
  if (clamped) r.footnotes.push_back(kClampNote);
  if (failed) {
    r.footnotes.push_back("a level failed its cocycle, bound or pairing check");
    r.status = kExitInvariant;
  }
  return r;
}

// bound --------------------------------------------------------------------

Report cmd_bound(const Config& cfg, std::uint64_t b1, std::uint64_t b2, std::uint64_t n,
                 std::optional<std::uint64_t> level) {
  if (n > b1) throw UsageError("--n must not exceed --b1");
  if (level && *level > n) throw UsageError("--level must not exceed --n");
  const auto sweep = level_sweep(b1, b2, n, cfg.p);
  const BestLevel best = best_level(b1, b2, n, cfg.p);
  Report r;
  r.json = base_json("bound", cfg);
  r.json["b1"] = b1;
  r.json["b2"] = b2;
  r.json["n"] = n;
  r.json["rows"] = Json::array();
  r.table.header = {"level", "bound"};
  bool clamped = false;
  for (std::uint64_t l = 0; l < sweep.size(); ++l) {
    if (level && *level != l) continue;
    r.json["rows"].push_back(Json{{"level", l}, {"bound", big(sweep[l])}});
    r.table.rows.push_back({std::to_string(l), cfg.format == "text"
                                                   ? clamp_text(sweep[l], clamped)
                                                   : sweep[l].str()});
  }
  r.json["best_level"] = best.ell;
  r.json["best_bound"] = big(best.bound);
  r.json["test_loops"] = big(test_loop_count(b1, n, best.ell, cfg.p));
  if (cfg.p == 2 && n == b1 && b1 >= 1) r.json["commutator_value"] = big(thm41_value(b1, b2));
  r.footnotes.push_back("best level " + std::to_string(best.ell) + ": " + best.bound.str());
  if (clamped) r.footnotes.push_back(kClampNote);
  return r;
}

// series -------------------------------------------------------------------

std::string optional_text(const std::optional<BigInt>& v) { return v ? v->str() : ""; }

Report cmd_series(const std::string& path, const Config& cfg, std::size_t steps) {
  const Presentation pres = load_file(path).presentation;
  const GrowthTrace t = run_series(pres, cfg.p, steps, cfg.budget);
  Report r;
  r.json = base_json("series", cfg);
  r.json["steps"] = Json::array();
  r.table.header = {"step", "index", "b1", "b2_complex", "predicted_floor", "level_star"};
  bool violated = false;
  for (const SeriesStep& s : t.steps) {
    Json j;
    j["step"] = s.i;
    j["index"] = big(s.index(cfg.p));
    j["index_exponent"] = big(s.index_exponent);
    j["b1"] = s.b1;
    j["b2_complex"] = s.b2;
    j["predicted_floor"] = s.predicted ? big(*s.predicted) : Json(nullptr);
    j["level_star"] = s.level_star ? Json(*s.level_star) : Json(nullptr);
    j["generators"] = s.generators;
    j["relators"] = s.relators;
    j["betti_agree"] = s.betti_agree;
    j["violated_levels"] = s.violated_levels;
    violated = violated || !s.violated_levels.empty() || !s.betti_agree;
    r.json["steps"].push_back(j);
    r.table.rows.push_back({std::to_string(s.i), s.index(cfg.p).str(), std::to_string(s.b1),
                            std::to_string(s.b2), optional_text(s.predicted),
                            s.level_star ? std::to_string(*s.level_star) : ""});
  }
  r.json["stop_reason"] = t.stop_reason;
  Json ratios = Json::array();
  for (const RatioRow& row : thm17_ratio_report(cfg.p, ratio_points(t))) {
    if (!row.log2_ratio) continue;
    Json j;
    j["step"] = row.i;
    j["log2_ratio"] = interval_json(*row.log2_ratio);
    j["ratio"] = row.ratio ? interval_json(*row.ratio) : Json(nullptr);
    j["trend"] = row.trend;
    ratios.push_back(j);
  }
  r.json["ratio"] = ratios;
  if (!t.stop_reason.empty()) r.footnotes.push_back("stopped: " + t.stop_reason);
  if (violated) {
    r.footnotes.push_back("a level bound exceeded the computed b1");
    r.status = kExitInvariant;
  }
  return r;
}

// census -------------------------------------------------------------------

std::string ceiling_text(const GrowthValue& v) {
  if (v.value) return v.value->str();
  return std::to_string(v.base) + "^" + interval_text(v.exponent, 4);
}

Report cmd_census(const std::string& path, const Config& cfg, std::size_t max_index,
                  std::size_t steps, std::uint64_t k, std::size_t index_limit,
                  std::uint64_t nodes) {
  const Presentation pres = load_file(path).presentation;
  const SubgroupCensus census = low_index(pres, max_index, index_limit, nodes);
  const GrowthTrace trace = run_series(pres, cfg.p, steps, cfg.budget);
  const auto floors = subnormal_floor_census(trace);
  const auto rows = compare_with_floor(census, floors, k);
  Report r;
  r.json = base_json("census", cfg);
  r.json["max_index"] = max_index;
  r.json["nodes"] = census.nodes;
  r.json["exact"] = census.exact;
  r.json["rows"] = Json::array();
  r.table.header = {"n", "s_n", "floor", "ceiling"};
  bool violated = false;
  for (const CensusRow& row : rows) {
    Json j;
    j["n"] = row.n;
    j["s_n"] = row.s_n;
    j["floor"] = big(row.certified_floor);
    j["power_floor"] = big(row.power_floor);
    Json c;
    c["base"] = row.ceiling.base;
    c["exponent"] = interval_json(row.ceiling.exponent);
    c["value"] = row.ceiling.value ? big(*row.ceiling.value) : Json(nullptr);
    j["ceiling"] = c;
    j["violation"] = row.violation;
    violated = violated || row.violation;
    r.json["rows"].push_back(j);
    r.table.rows.push_back({std::to_string(row.n), std::to_string(row.s_n),
                            row.certified_floor.str(), ceiling_text(row.ceiling)});
  }
  Json fl = Json::array();
  for (const FloorRow& f : floors) {
    fl.push_back(Json{{"step", f.i},
                      {"n", big(f.n)},
                      {"floor", big(f.floor)},
                      {"certified", big(f.certified)},
                      {"sharpened_n", big(f.sharpened_n)},
                      {"sharpened", big(f.sharpened)}});
  }
  r.json["floors"] = fl;
  r.footnotes.push_back("floor: subgroups between consecutive terms of the derived " +
                        std::to_string(cfg.p) + "-series (a lower bound, not a subnormal count)");
  if (violated) {
    r.footnotes.push_back("a count fell below its floor");
    r.status = kExitInvariant;
  }
  return r;
}

// asymptote ----------------------------------------------------------------

Rational parse_rational(const std::string& s) {
  const auto dot = s.find('.');
  try {
    if (dot == std::string::npos) return Rational(s);
    const std::string whole = s.substr(0, dot);
    const std::string frac = s.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("bad number '" + s + "'");
    }
    const bool negative = !whole.empty() && whole[0] == '-';
    Rational v = BigInt(whole.empty() || whole == "-" ? "0" : whole);
    const Rational f = Rational(BigInt(frac)) / pow_big(10, frac.size());
    return negative ? Rational(v - f) : Rational(v + f);
  } catch (const std::runtime_error&) {
    throw UsageError("bad number '" + s + "'");
  }
}

BigInt parse_big(const std::string& s) {
  if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos) {
    throw UsageError("bad integer '" + s + "'");
  }
  return BigInt(s);
}

struct AsymptoteArgs {
  std::string mode = "thm11";
  std::string n;
  std::uint64_t k = 2;
  std::string x1 = "20";
  std::int64_t cap = 0;
  std::size_t steps = 3;
  std::string lambda = "79/100";
  std::string b1 = "10";
  std::uint64_t m = 1;
  std::vector<std::uint64_t> x;
  std::vector<std::uint64_t> threshold;
};

Report asymptote_growth(const Config& cfg, const AsymptoteArgs& a) {
  if (a.n.empty()) throw UsageError("--n is required for mode " + a.mode);
  GrowthValue v;
  try {
    v = growth_floors(parse_growth_mode(a.mode), parse_big(a.n), a.k);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Report r;
  r.json = base_json("asymptote", cfg);
  r.json["mode"] = a.mode;
  r.json["n"] = big(v.n);
  r.table.vertical = true;
  if (v.mode == GrowthMode::Thm17) {
    r.json["ratio"] = interval_json(v.ratio);
    r.table.header = {"mode", "n", "ratio"};
    r.table.rows.push_back({a.mode, v.n.str(), interval_text(v.ratio)});
    return r;
  }
  r.json["base"] = v.base;
  r.json["exponent"] = interval_json(v.exponent);
  r.json["value"] = v.value ? Json(v.value->str()) : Json(nullptr);
  std::string value = v.exponent.exact() ? "too large to print" : "irrational exponent";
  if (v.value) {
    const std::string digits = v.value->str();
    value = digits.size() <= 64 ? digits : std::to_string(digits.size()) + " digits";
  }
  r.table.header = {"mode", "n", "power", "value"};
  r.table.rows.push_back(
      {a.mode, v.n.str(), std::to_string(v.base) + "^" + interval_text(v.exponent), value});
  return r;
}

Report asymptote_recurrence(const Config& cfg, const AsymptoteArgs& a) {
  const RecurrenceTrace t =
      derived2_recurrence(parse_big(a.x1), a.cap, a.steps, parse_rational(a.lambda));
  Report r;
  r.json = base_json("asymptote", cfg);
  r.json["mode"] = a.mode;
  r.json["x1"] = big(parse_big(a.x1));
  r.json["cap"] = a.cap;
  r.json["lambda"] = rational_text(parse_rational(a.lambda));
  r.json["rows"] = Json::array();
  r.table.header = {"step", "x_i", "sigma_i", "claim2"};
  for (const RecurrenceState& s : t.states) {
    r.json["rows"].push_back(Json{{"step", s.i},
                                  {"x_i", big(s.x)},
                                  {"sigma_i", big(s.sigma)},
                                  {"claim2", to_string(s.claim2)}});
    r.table.rows.push_back({std::to_string(s.i), s.x.str(), s.sigma.str(), to_string(s.claim2)});
  }
  r.json["stop_reason"] = t.stop_reason;
  if (!t.stop_reason.empty()) r.footnotes.push_back("stopped: " + t.stop_reason);
  return r;
}

Report asymptote_ratio(const Config& cfg, const AsymptoteArgs& a) {
  const RecurrenceTrace t =
      derived2_recurrence(parse_big(a.x1), a.cap, a.steps, parse_rational(a.lambda));
  Report r;
  r.json = base_json("asymptote", cfg);
  r.json["mode"] = a.mode;
  r.json["x1"] = big(parse_big(a.x1));
  r.json["rows"] = Json::array();
  r.table.header = {"step", "log2_index", "b1", "log2_ratio", "trend"};
  for (const RatioRow& row : thm17_ratio_report(2, ratio_points(t))) {
    Json j;
    j["step"] = row.i;
    j["log2_index"] = big(row.index_exponent);
    j["b1"] = big(row.b1);
    j["log2_ratio"] = row.log2_ratio ? interval_json(*row.log2_ratio) : Json(nullptr);
    j["ratio"] = row.ratio ? interval_json(*row.ratio) : Json(nullptr);
    j["trend"] = row.trend;
    r.json["rows"].push_back(j);
    r.table.rows.push_back({std::to_string(row.i), row.index_exponent.str(), row.b1.str(),
                            row.log2_ratio ? interval_text(*row.log2_ratio, 4) : "n/a",
                            row.trend});
  }
  return r;
}

Report asymptote_b2b1(const Config& cfg, const AsymptoteArgs& a) {
  B2B1Trace t;
  try {
    t = b2b1_iteration(parse_big(a.b1), a.m, cfg.p, a.steps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Report r;
  r.json = base_json("asymptote", cfg);
  r.json["mode"] = a.mode;
  r.json["m"] = a.m;
  r.json["n"] = t.n;
  r.json["rows"] = Json::array();
  r.table.header = {"step", "b1", "next_floor", "log_index", "exponent_lo"};
  for (const B2B1Step& s : t.steps) {
    Json j;
    j["step"] = s.i;
    j["b1"] = big(s.b1);
    j["next_floor"] = big(s.next_floor);
    j["log_index"] = s.log_index;
    j["exponent_lo"] = s.exponent_lo ? Json(rational_text(*s.exponent_lo)) : Json(nullptr);
    r.json["rows"].push_back(j);
    r.table.rows.push_back({std::to_string(s.i), s.b1.str(), s.next_floor.str(),
                            std::to_string(s.log_index),
                            s.exponent_lo ? rational_text(*s.exponent_lo) : ""});
  }
  r.json["stop_reason"] = t.stop_reason;
  if (!t.stop_reason.empty()) r.footnotes.push_back("stopped: " + t.stop_reason);
  return r;
}

Report asymptote_stirling(const Config& cfg, const AsymptoteArgs& a) {
  const Rational lambda = parse_rational(a.lambda);
  Report r;
  r.json = base_json("asymptote", cfg);
  r.json["mode"] = a.mode;
  r.json["lambda"] = rational_text(lambda);
  r.json["rows"] = Json::array();
  r.table.header = {"x", "holds"};
  for (std::uint64_t x : a.x) {
    const bool holds = stirling_inequality(x, lambda);
    r.json["rows"].push_back(Json{{"x", x}, {"holds", holds}});
    r.table.rows.push_back({std::to_string(x), yes_no(holds)});
  }
  if (!a.threshold.empty()) {
    if (a.threshold.size() != 2 || a.threshold[0] > a.threshold[1]) {
      throw UsageError("--threshold takes LO HI with LO <= HI");
    }
    const auto t = stirling_threshold(lambda, a.threshold[0], a.threshold[1]);
    r.json["threshold"] = t ? Json(*t) : Json(nullptr);
    r.footnotes.push_back("threshold in [" + std::to_string(a.threshold[0]) + ", " +
                          std::to_string(a.threshold[1]) +
                          "]: " + (t ? std::to_string(*t) : "none"));
  }
  return r;
}

Report cmd_asymptote(const Config& cfg, const AsymptoteArgs& a) {
  if (a.mode == "recurrence") return asymptote_recurrence(cfg, a);
  if (a.mode == "ratio") return asymptote_ratio(cfg, a);
  if (a.mode == "b2b1") return asymptote_b2b1(cfg, a);
  if (a.mode == "stirling") return asymptote_stirling(cfg, a);
  return asymptote_growth(cfg, a);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mod-p homology growth of finite covers and subgroup counts", "homgrow"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--p", cfg.p, "prime")->capture_default_str();
  app.add_option("--budget", cfg.budget, "cell budget for covers")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--epi", cfg.epi, "epimorphism matrix \"1 0; 0 1\" or 'full'");
  app.add_option("--witnesses", cfg.witnesses, "witness file for X3 generators");
  app.fallthrough();

  std::string file;
  std::optional<std::uint64_t> level;
  bool sweep = false;
  bool rewrite = false;
  std::uint64_t b1 = 0;
  std::uint64_t b2 = 0;
  std::uint64_t n = 0;
  std::size_t steps = 3;
  std::size_t max_index = 4;
  std::size_t index_limit = kDefaultIndexLimit;
  std::uint64_t nodes = kDefaultNodeBudget;
  std::uint64_t k = 2;
  AsymptoteArgs asy;

  auto* analyze = app.add_subcommand("analyze", "Betti numbers and deficiency of a presentation");
  analyze->add_option("file", file)->required();

  auto* verify = app.add_subcommand("verify", "compare cover b1 with the level bounds");
  verify->add_option("file", file)->required();
  verify->add_flag("--sweep", sweep, "every full-rank epimorphism within the budget");
  verify->add_option("--level", level);

  auto* cover = app.add_subcommand("cover", "build the cover and its Betti numbers");
  cover->add_option("file", file)->required();
  cover->add_flag("--rewrite", rewrite, "print the subgroup presentation");

  auto* cochains = app.add_subcommand("cochains", "level cocycle spaces on the cover");
  cochains->add_option("file", file)->required();
  cochains->add_option("--level", level);

  auto* bound = app.add_subcommand("bound", "level bounds from b1, b2 and n");
  bound->add_option("--b1", b1)->required();
  bound->add_option("--b2", b2)->required();
  bound->add_option("--n", n)->required();
  bound->add_option("--level", level);
  bound->add_flag("--sweep", sweep, "all levels (the default)");

  auto* series = app.add_subcommand("series", "derived p-series of the group");
  series->add_option("file", file)->required();
  series->add_option("--steps", steps)->capture_default_str();

  auto* census = app.add_subcommand("census", "low-index subgroup counts against the floors");
  census->add_option("file", file)->required();
  census->add_option("--max-index", max_index)->capture_default_str();
  census->add_option("--steps", steps, "series steps for the floors")->default_val(2);
  census->add_option("--k", k, "ceiling base")->capture_default_str();
  census->add_option("--index-limit", index_limit)->capture_default_str();
  census->add_option("--nodes", nodes, "search node budget")->capture_default_str();

  auto* asymptote = app.add_subcommand("asymptote", "growth floors and recurrences");
  asymptote->add_option("--mode", asy.mode)
      ->capture_default_str()
      ->check(CLI::IsMember(
          {"thm11", "thm17", "ceiling", "power", "recurrence", "ratio", "b2b1", "stirling"}));
  asymptote->add_option("--n", asy.n);
  asymptote->add_option("--k", asy.k)->capture_default_str();
  asymptote->add_option("--x1", asy.x1)->capture_default_str();
  asymptote->add_option("--cap", asy.cap)->capture_default_str();
  asymptote->add_option("--steps", asy.steps)->capture_default_str();
  asymptote->add_option("--lambda", asy.lambda)->capture_default_str();
  asymptote->add_option("--b1", asy.b1)->capture_default_str();
  asymptote->add_option("--m", asy.m)->capture_default_str();
  asymptote->add_option("--x", asy.x);
  asymptote->add_option("--threshold", asy.threshold)->expected(2);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!is_prime(cfg.p)) throw UsageError("--p must be prime");
    Report r;
    if (*analyze) {
      r = cmd_analyze(file, cfg);
    } else if (*verify) {
      r = cmd_verify(file, cfg, sweep, level);
    } else if (*cover) {
      r = cmd_cover(file, cfg, rewrite);
    } else if (*cochains) {
      r = cmd_cochains(file, cfg, level);
    } else if (*bound) {
      r = cmd_bound(cfg, b1, b2, n, level);
    } else if (*series) {
      r = cmd_series(file, cfg, steps);
    } else if (*census) {
      r = cmd_census(file, cfg, max_index, steps, k, index_limit, nodes);
    } else {
      r = cmd_asymptote(cfg, asy);
    }
    emit(out, cfg, r);
    return r.status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace homgrow
