// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 on any
// failure.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "homgrow/bounds.hpp"
#include "homgrow/census.hpp"
#include "homgrow/cli.hpp"
#include "homgrow/cochain_lab.hpp"
#include "homgrow/cover.hpp"
#include "homgrow/epimorphism.hpp"
#include "homgrow/errors.hpp"
#include "homgrow/presentation.hpp"
#include "homgrow/series.hpp"

using namespace homgrow;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string corpus_path(const std::string& name) {
  return std::string(HOMGROW_CORPUS_DIR) + "/" + name;
}

std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(HOMGROW_CORPUS_DIR)) {
    if (e.path().extension() == ".pres") out.push_back(e.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << title;
  if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
  std::cout << std::endl;
}

struct LabEntry {
  std::string name;
  std::unique_ptr<CochainLab> lab;
};

// p = 2 labs for every corpus presentation that normalizes, with its .wit
// file when there is one.
std::vector<LabEntry> corpus_labs(std::vector<std::string>& skipped) {
  std::vector<LabEntry> out;
  for (const auto& name : corpus_files()) {
    const Presentation pres = load_presentation(corpus_path(name));
    const Epimorphism epi = full_mod_p_epi(pres, 2);
    const fs::path wit_path = fs::path(corpus_path(name)).replace_extension(".wit");
    Witnesses wit;
    if (fs::exists(wit_path)) wit = load_witnesses(wit_path.string(), pres.generators);
    try {
      auto lab = std::make_unique<CochainLab>(
          normalize_witnessed(pres, 2, epi, std::nullopt, wit), epi);
      out.push_back({name, std::move(lab)});
    } catch (const InvariantViolation&) {
      skipped.push_back(name);
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

Outcome level_bounds_exhaustive() {
  const auto t0 = Clock::now();
  std::size_t covers = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::string first;
  for (const auto& name : corpus_files()) {
    const Presentation pres = load_presentation(corpus_path(name));
    const ComplexBetti g = complex_betti(pres, 2);
    for (std::uint32_t n = 1; n <= g.b1; ++n) {
      if (cover_cell_count(pres, Epimorphism{2, n, {}}) > (BigInt(1) << 20)) continue;
      const auto bounds = level_sweep(g.b1, g.b2, n, 2);
      for (const Epimorphism& epi : all_epimorphisms(pres, 2, n)) {
        const std::uint64_t b1 = cover_betti(build_cover(pres, epi)).b1;
        ++covers;
        for (std::uint64_t l = 0; l <= n; ++l) {
          ++checks;
          if (BigInt(b1) < bounds[l]) {
            if (violations++ == 0) {
              first = name + " n=" + std::to_string(n) + " l=" + std::to_string(l);
            }
          }
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream s;
  s << covers << " covers, " << checks << " level checks, " << violations << " violations, "
    << static_cast<int>(secs) << " s";
  if (!first.empty()) s << ", first " << first;
  return {violations == 0 && secs < 300, s.str()};
}

Outcome sharpness() {
  std::ostringstream s;
  bool ok = true;
  for (const auto& [name, r] : {std::pair{"f2.pres", 2U}, {"f3.pres", 3U}}) {
    const Presentation pres = load_presentation(corpus_path(name));
    const Epimorphism epi = full_mod_p_epi(pres, 2);
    const std::uint64_t n = epi.n;
    const BigInt bound = thm16_bound({r, 0, n, n, 2});
    const BigInt exact = pow_big(2, n) * (r - 1) + 1;
    const std::uint64_t b1 = cover_betti(build_cover(pres, epi)).b1;
    ok = ok && bound == exact && BigInt(b1) == exact;
    s << name << " " << bound << "=" << b1 << "; ";
  }
  const Presentation g2 = load_presentation(corpus_path("genus2.pres"));
  const ComplexBetti gb = complex_betti(g2, 2);
  const BigInt bound = thm16_bound({gb.b1, gb.b2, 4, 3, 2});
  const std::uint64_t b1 = cover_betti(build_cover(g2, full_mod_p_epi(g2, 2))).b1;
  ok = ok && bound == 34 && b1 == 34;
  s << "genus2 level 3 " << bound << "=" << b1;
  return {ok, s.str()};
}

Outcome commutator_identity() {
  std::size_t cases = 0;
  for (std::uint64_t b1 = 0; b1 <= 64; ++b1) {
    for (std::uint64_t b2 = 0; b2 <= b1; ++b2) {
      ++cases;
      if (b1 == 0) continue;  // n = b1 = 0 leaves no level 1
      if (thm16_bound({b1, b2, b1, 1, 2}) != binomial(b1, 2) + b1 - b2) {
        return {false, "b1=" + std::to_string(b1) + " b2=" + std::to_string(b2)};
      }
    }
  }
  return {true, std::to_string(cases - 1) + " pairs"};
}

Outcome cocycle_suite() {
  struct Case {
    std::string name;
    std::string wit;
    std::size_t faces;
  };
  std::ostringstream s;
  bool ok = true;
  for (const Case& c : {Case{"genus2.pres", "", 16},
                        Case{"worked_normalized.pres", "worked_normalized.wit", 8}}) {
    const Presentation pres = load_presentation(corpus_path(c.name));
    const Epimorphism epi = full_mod_p_epi(pres, 2);
    Witnesses wit;
    if (!c.wit.empty()) wit = load_witnesses(corpus_path(c.wit), pres.generators);
    CochainLab lab(normalize_witnessed(pres, 2, epi, std::nullopt, wit), epi);
    std::size_t vectors = 0;
    std::size_t bad = 0;
    for (std::size_t l = 0; l <= lab.n(); ++l) {
      const LevelCocycles cc = lab.build_c1(l);
      vectors += cc.c1.size();
      bad += lab.verify_cocycles(cc.c1).size();
    }
    ok = ok && bad == 0 && lab.cover().face_count() == c.faces;
    s << c.name << ": " << lab.cover().face_count() << " faces, " << vectors << " vectors, "
      << bad << " violations; ";
  }
  return {ok, s.str()};
}

Outcome lemma_properties(std::vector<LabEntry>& labs, const std::string& skipped) {
  std::mt19937_64 rng(20240601);
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::string first;
  for (auto& e : labs) {
    for (const PropertyReport& r : {check_commutator_identity(*e.lab, rng, 1000),
                                    check_generator_commutator(*e.lab, rng, 1000),
                                    check_conjugation_identity(*e.lab, rng, 1000)}) {
      instances += r.instances;
      violations += r.violations;
      if (r.violations > 0 && first.empty()) first = e.name + ": " + r.first_failure;
      if (r.instances < 1000) {
        violations += 1;
        if (first.empty()) first = e.name + ": fewer than 1000 instances";
      }
    }
    for (std::size_t l = 0; l <= e.lab->n(); ++l) {
      const PropertyReport r = check_relator_translates(*e.lab, l);
      instances += r.instances;
      violations += r.violations;
      if (r.violations > 0 && first.empty()) first = e.name + ": " + r.first_failure;
    }
  }
  std::ostringstream s;
  s << labs.size() << " covers, " << instances << " instances, " << violations << " violations";
  if (!skipped.empty()) s << "; not normalizable: " << skipped;
  if (!first.empty()) s << "; " << first;
  return {violations == 0, s.str()};
}

Outcome pairing_and_dimension(std::vector<LabEntry>& labs) {
  std::size_t levels = 0;
  std::string bad;
  for (auto& e : labs) {
    const CochainLab& lab = *e.lab;
    for (std::size_t l = 0; l <= lab.n(); ++l) {
      ++levels;
      const FpMatrix m = lab.pairing_matrix(l);
      bool unitriangular = m.rows() == m.cols();
      for (std::size_t i = 0; i < m.rows() && unitriangular; ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
          if (m.at(i, j) != (i == j ? 1U : 0U)) unitriangular = false;
        }
      }
      const DimensionReport d = lab.dimension_report(l);
      const BigInt loops = test_loop_count(lab.b1(), lab.n(), l, 2);
      const bool ok = unitriangular && d.pairing_rank == d.test_loops &&
                      BigInt(d.test_loops) == loops && BigInt(d.dim_quotient) >= d.bound &&
                      d.dim_quotient == d.dim_quotient_dual;
      if (!ok && bad.empty()) bad = e.name + " level " + std::to_string(l);
    }
  }
  std::string detail = std::to_string(labs.size()) + " covers, " + std::to_string(levels) + " levels";
  if (!bad.empty()) detail += "; first failure " + bad;
  return {bad.empty(), detail};
}

Outcome figure_two() {
  const Presentation pres = load_presentation(corpus_path("f3.pres"));
  const Epimorphism epi = full_mod_p_epi(pres, 2);
  CochainLab lab(normalize_witnessed(pres, 2, epi, std::nullopt, {}), epi);
  Cochain sum(lab.cover().edge_count(), 0);
  for (const BasisLabel& label : {BasisLabel{{0, 1}, 2}, BasisLabel{{1, 2}, 0},
                                  BasisLabel{{0, 2}, 1}}) {
    const Cochain c = lab.basis_cochain(label);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = (sum[i] + c[i]) % 2;
  }
  const bool in = lab.in_coboundaries(sum);
  const bool single_not_in = !lab.in_coboundaries(lab.basis_cochain({{0, 1}, 2}));
  return {in && single_not_in,
          std::string("sum ") + (in ? "in" : "not in") + " B1, single term " +
              (single_not_in ? "not in" : "in") + " B1"};
}

Outcome series_trace() {
  const auto t0 = Clock::now();
  const GrowthTrace t = run_series(load_presentation(corpus_path("f2.pres")), 2, 3);
  std::vector<std::uint64_t> b1;
  std::vector<BigInt> index;
  bool agree = true;
  for (const SeriesStep& s : t.steps) {
    b1.push_back(s.b1);
    index.push_back(s.index(2));
    agree = agree && s.betti_agree;
  }
  const double secs = seconds_since(t0);
  const bool ok = b1 == std::vector<std::uint64_t>{2, 5, 129} &&
                  index == std::vector<BigInt>{1, 4, 128} && agree && secs < 60;
  std::ostringstream s;
  s << "b1";
  for (auto v : b1) s << " " << v;
  s << ", index";
  for (const auto& v : index) s << " " << v;
  s << ", " << static_cast<int>(secs) << " s";
  return {ok, s.str()};
}

std::vector<std::uint64_t> hall_counts(std::uint64_t r, std::size_t n_max) {
  auto fact = [](std::uint64_t m) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= m; ++i) f *= i;
    return f;
  };
  auto pw = [](std::uint64_t b, std::uint64_t e) {
    std::uint64_t v = 1;
    while (e-- > 0) v *= b;
    return v;
  };
  std::vector<std::uint64_t> a(n_max + 1, 0);
  std::vector<std::uint64_t> s;
  std::uint64_t total = 0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    a[n] = n * pw(fact(n), r - 1);
    for (std::uint64_t k = 1; k < n; ++k) a[n] -= pw(fact(n - k), r - 1) * a[k];
    total += a[n];
    s.push_back(total);
  }
  return s;
}

Outcome census() {
  const auto t0 = Clock::now();
  const auto f2 = low_index(load_presentation(corpus_path("f2.pres")), 4).cumulative;
  const auto z = low_index(load_presentation(corpus_path("z.pres")), 8).cumulative;
  const double secs = seconds_since(t0);
  const bool ok = f2 == std::vector<std::uint64_t>{1, 4, 17, 88} && f2 == hall_counts(2, 4) &&
                  z == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8} && secs < 30;
  std::ostringstream s;
  s << "F2";
  for (auto v : f2) s << " " << v;
  s << ", Z";
  for (auto v : z) s << " " << v;
  s << ", " << static_cast<int>(secs) << " s";
  return {ok, s.str()};
}

Outcome arithmetic() {
  const RecurrenceTrace rec = derived2_recurrence(20, 0, 1);
  const bool rec_ok = rec.states.size() >= 2 && rec.states[1].x == 2646544;
  const B2B1Trace it = b2b1_iteration(10, 1, 2, 1);
  const bool it_ok = it.steps.size() >= 2 && it.steps[1].b1 == 15 && it.steps[1].b1 == 2 * 10 - 5;
  const Rational lambda(79, 100);
  const bool st_ok = stirling_inequality(1024, lambda) && stirling_inequality(4096, lambda);
  std::ostringstream s;
  s << "x2 = " << (rec.states.size() >= 2 ? rec.states[1].x.str() : "?") << ", b = "
    << (it.steps.size() >= 2 ? it.steps[1].b1.str() : "?") << ", Stirling at 2^10 and 2^12 "
    << (st_ok ? "holds" : "fails");
  return {rec_ok && it_ok && st_ok, s.str()};
}

std::vector<std::vector<std::string>> determinism_commands() {
  const std::string wit = corpus_path("worked_normalized.wit");
  std::vector<std::vector<std::string>> cmds;
  for (const std::string fmt : {"json", "csv"}) {
    cmds.push_back({"--format", fmt, "analyze", corpus_path("worked.pres")});
    cmds.push_back({"--format", fmt, "verify", corpus_path("genus2.pres")});
    cmds.push_back({"--format", fmt, "verify", corpus_path("z2xz2.pres"), "--sweep"});
    cmds.push_back({"--format", fmt, "cover", corpus_path("f3.pres")});
    cmds.push_back({"--format", fmt, "cochains", corpus_path("worked_normalized.pres"),
                    "--witnesses", wit});
    cmds.push_back({"--format", fmt, "cochains", corpus_path("genus2.pres")});
    cmds.push_back({"--format", fmt, "bound", "--b1", "4", "--b2", "1", "--n", "4"});
    cmds.push_back({"--format", fmt, "series", corpus_path("f2.pres"), "--steps", "3"});
    cmds.push_back({"--format", fmt, "census", corpus_path("f2.pres"), "--max-index", "4"});
    cmds.push_back({"--format", fmt, "asymptote", "--mode", "thm11", "--n", "65536"});
    cmds.push_back({"--format", fmt, "asymptote", "--mode", "recurrence", "--x1", "20"});
    cmds.push_back({"--format", fmt, "asymptote", "--mode", "ratio", "--x1", "64"});
  }
  return cmds;
}

Outcome determinism() {
  auto run_all = [] {
    std::string all;
    for (const auto& cmd : determinism_commands()) {
      std::ostringstream out;
      std::ostringstream err;
      const int code = run_cli(cmd, out, err);
      all += std::to_string(code) + "\n" + out.str() + err.str();
    }
    return all;
  };
  const std::string a = run_all();
  const std::string b = run_all();
  return {a == b, std::to_string(determinism_commands().size()) + " commands, " +
                      std::to_string(a.size()) + " bytes each run"};
}

}  // namespace

int main() {
  std::vector<std::string> skipped;
  std::vector<LabEntry> labs;
  try {
    labs = corpus_labs(skipped);
  } catch (const std::exception& e) {
    std::cout << "setup failed: " << e.what() << std::endl;
    return 1;
  }
  report(1, "level bounds on every full-rank mod-2 cover of the corpus", level_bounds_exhaustive);
  report(2, "sharpness on free groups and the genus-2 surface", sharpness);
  report(3, "level one equals C(b1,2) + b1 - b2 for b1 <= 64", commutator_identity);
  report(4, "level cocycles vanish on every face", cocycle_suite);
  report(5, "commutator and conjugation identities, relator translates",
         [&] { return lemma_properties(labs, join(skipped)); });
  report(6, "pairing unitriangular, quotient dimension above the bound",
         [&] { return pairing_and_dimension(labs); });
  report(7, "three-term sum on the F3 cover is a coboundary", figure_two);
  report(8, "derived 2-series of F2", series_trace);
  report(9, "subgroup counts of F2 and Z", census);
  report(10, "recurrence, b2/b1 iteration and Stirling arithmetic", arithmetic);
  report(11, "repeated runs give identical output", determinism);
  return failures == 0 ? 0 : 1;
}
