#include "homgrow/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "homgrow/epimorphism.hpp"
#include "homgrow/errors.hpp"
#include "word_parser.hpp"

namespace homgrow {

namespace {

struct Line {
  std::size_t number;
  std::string text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 1;
  std::size_t start = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") start = 3;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    out.push_back({number, std::move(line)});
    ++number;
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

// Returns the column (1-based) right after "key:" if the line starts with it.
std::optional<std::size_t> keyword(const std::string& line,
                                   std::string_view key) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (line.compare(i, key.size(), key) != 0) return std::nullopt;
  std::size_t j = i + key.size();
  while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j]))) ++j;
  if (j >= line.size() || line[j] != ':') return std::nullopt;
  return j + 1;
}

bool ends_with_continuation(const std::string& s, char c) {
  auto it = std::find_if(s.rbegin(), s.rend(), [](char ch) {
    return !std::isspace(static_cast<unsigned char>(ch));
  });
  return it != s.rend() && *it == c;
}

}  // namespace

PresentationFile parse_presentation_file(std::string_view text) {
  const auto lines = split_lines(text);
  PresentationFile out;
  Presentation& pres = out.presentation;
  bool have_gens = false;
  bool have_rels = false;

  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& line = lines[i];
    if (is_blank(line.text)) {
      ++i;
      continue;
    }
    if (auto col = keyword(line.text, "gens")) {
      if (have_gens) throw ParseError("duplicate 'gens:' line", line.number, 1);
      have_gens = true;
      std::istringstream names(line.text.substr(*col));
      std::string name;
      while (names >> name) {
        const auto pos = line.text.find(name, *col) + 1;
        if (!detail::is_identifier(name)) {
          throw ParseError("invalid generator name '" + name + "'",
                           line.number, pos);
        }
        if (std::find(pres.generators.begin(), pres.generators.end(), name) !=
            pres.generators.end()) {
          throw ParseError("duplicate generator '" + name + "'", line.number,
                           pos);
        }
        pres.generators.push_back(name);
      }
      ++i;
      continue;
    }
    if (auto col = keyword(line.text, "rels")) {
      if (!have_gens) {
        throw ParseError("'gens:' must come before 'rels:'", line.number, 1);
      }
      if (have_rels) throw ParseError("duplicate 'rels:' line", line.number, 1);
      have_rels = true;
      std::size_t offset = *col;
      std::size_t li = i;
      while (true) {
        const Line& cur = lines[li];
        const std::string_view body =
            std::string_view(cur.text).substr(offset);
        detail::WordReader reader(body, pres.generators, cur.number,
                                  offset + 1);
        bool continues = false;
        if (!reader.at_end()) {
          while (true) {
            const std::size_t item_col = (reader.skip_space(), reader.column());
            Word w = reader.read_word();
            if (w.empty()) {
              throw ParseError("relator reduces to the empty word", cur.number,
                               item_col);
            }
            pres.relators.push_back(std::move(w));
            if (reader.consume(',')) {
              if (reader.at_end()) {
                continues = true;
                break;
              }
              continue;
            }
            if (!reader.at_end()) reader.fail("expected ',' between relators");
            break;
          }
        }
        if (!continues) break;
        // Trailing comma: the list continues on the next non-blank line.
        do {
          ++li;
        } while (li < lines.size() && is_blank(lines[li].text));
        if (li >= lines.size()) {
          throw ParseError("relator list ends with ','", cur.number,
                           cur.text.size());
        }
        offset = 0;
      }
      i = li + 1;
      continue;
    }
    if (auto col = keyword(line.text, "epi")) {
      std::string epi = line.text.substr(*col);
      std::size_t li = i;
      while (ends_with_continuation(lines[li].text, ';') && li + 1 < lines.size() &&
             !is_blank(lines[li + 1].text)) {
        ++li;
        epi += " " + lines[li].text;
      }
      out.epi_text = epi;
      i = li + 1;
      continue;
    }
    throw ParseError("expected 'gens:', 'rels:' or 'epi:'", line.number, 1);
  }
  if (!have_gens) throw ParseError("missing 'gens:' line", 1, 1);
  return out;
}

Presentation parse_presentation(std::string_view text) {
  return parse_presentation_file(text).presentation;
}

namespace {
std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

Presentation load_presentation(const std::string& path) {
  return parse_presentation(read_file(path));
}

std::string format_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& g : p.generators) out += " " + g;
  out += "\nrels:";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out += (i == 0 ? " " : ", ") + format_word(p.relators[i], p.generators);
  }
  out += "\n";
  return out;
}

FpMatrix relator_matrix(const Presentation& pres, std::uint32_t p) {
  FpMatrix m(pres.generator_count(), pres.relator_count(), p);
  for (std::size_t r = 0; r < pres.relator_count(); ++r) {
    const auto v = exponent_vector(pres.relators[r], pres.generator_count(), p);
    for (std::size_t g = 0; g < v.size(); ++g) {
      if (v[g]) m.set(g, r, v[g]);
    }
  }
  return m;
}

ComplexBetti complex_betti(const Presentation& pres, std::uint32_t p) {
  const std::size_t rk = rank(relator_matrix(pres, p));
  return {1, pres.generator_count() - rk, pres.relator_count() - rk, p};
}

std::int64_t deficiency(const Presentation& pres) {
  return static_cast<std::int64_t>(pres.generator_count()) -
         static_cast<std::int64_t>(pres.relator_count());
}

Section8Report check_section8_conditions(const Presentation& pres,
                                         std::uint32_t p) {
  Section8Report rep;
  rep.betti = complex_betti(pres, p);
  const auto b1 = static_cast<std::int64_t>(rep.betti.b1);
  const auto b2 = static_cast<std::int64_t>(rep.betti.b2);
  rep.b2_minus_b1 = b2 - b1;
  rep.b2_over_b1_plus_1 = Rational(b2, b1 + 1);
  rep.b2_le_b1 = b2 <= b1;
  rep.b2_minus_b1_le_minus1 = b2 - b1 <= -1;
  rep.b2_le_2b1_minus_2 = b2 <= 2 * b1 - 2;
  return rep;
}

Witnesses parse_witnesses(std::string_view text,
                          const std::vector<std::string>& names) {
  Witnesses out;
  for (const Line& line : split_lines(text)) {
    if (is_blank(line.text)) continue;
    const auto eq = line.text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'generator = word'", line.number, 1);
    }
    std::string lhs = line.text.substr(0, eq);
    const auto first = lhs.find_first_not_of(" \t");
    const auto last = lhs.find_last_not_of(" \t");
    lhs = first == std::string::npos ? "" : lhs.substr(first, last - first + 1);
    const auto it = std::find(names.begin(), names.end(), lhs);
    if (it == names.end()) {
      throw ParseError("unknown generator '" + lhs + "'", line.number,
                       first == std::string::npos ? 1 : first + 1);
    }
    const auto gen = static_cast<GeneratorId>(it - names.begin());
    if (out.count(gen)) {
      throw ParseError("duplicate witness for '" + lhs + "'", line.number, 1);
    }
    out[gen] = parse_word(std::string_view(line.text).substr(eq + 1), names,
                          line.number, eq + 2);
  }
  return out;
}

Witnesses load_witnesses(const std::string& path,
                         const std::vector<std::string>& names) {
  return parse_witnesses(read_file(path), names);
}

std::vector<GeneratorId> NormalizedPresentation::x12() const {
  std::vector<GeneratorId> out = x1;
  out.insert(out.end(), x2.begin(), x2.end());
  std::sort(out.begin(), out.end());
  return out;
}

NormalizedPresentation normalize_witnessed(
    const Presentation& pres, std::uint32_t p, const Epimorphism& epi,
    const std::optional<GeneratorPartition>& partition,
    const Witnesses& witnesses) {
  if (epi.p != p) {
    throw std::invalid_argument("epimorphism prime differs from p");
  }
  validate_epimorphism(pres, epi);
  const std::size_t ngen = pres.generator_count();
  const auto& names = pres.generators;
  auto is_zero = [](const FpVector& v) {
    return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
  };

  GeneratorPartition part;
  if (partition) {
    part = *partition;
  } else {
    std::vector<bool> involved(ngen, false);
    for (const auto& [g, w] : witnesses) {
      if (g < ngen) involved[g] = true;
    }
    for (const auto& r : pres.relators) {
      const auto v = exponent_vector(r, ngen, p);
      for (std::size_t g = 0; g < ngen; ++g) {
        if (v[g]) involved[g] = true;
      }
    }
    std::vector<FpVector> chosen;
    for (GeneratorId g = 0; g < ngen; ++g) {
      if (involved[g]) {
        part.x3.push_back(g);
        continue;
      }
      const FpVector& img = epi.images[g];
      bool independent = !is_zero(img);
      if (independent) {
        auto trial = chosen;
        trial.push_back(img);
        independent = span_rank(trial, epi.n, p) == trial.size();
      }
      if (independent) {
        chosen.push_back(img);
        part.x1.push_back(g);
      } else {
        part.x2.push_back(g);
      }
    }
  }

  std::vector<int> owner(ngen, -1);
  auto claim = [&](const std::vector<GeneratorId>& set, int tag) {
    for (auto g : set) {
      if (g >= ngen) {
        throw InvariantViolation("partition references generator " +
                                 std::to_string(g) + " out of range");
      }
      if (owner[g] != -1) {
        throw InvariantViolation("generator '" + names[g] +
                                 "' appears in two partition classes");
      }
      owner[g] = tag;
    }
  };
  claim(part.x1, 1);
  claim(part.x2, 2);
  claim(part.x3, 3);
  for (GeneratorId g = 0; g < ngen; ++g) {
    if (owner[g] == -1) {
      throw InvariantViolation("generator '" + names[g] +
                               "' is in no partition class");
    }
  }
  for (auto* set : {&part.x1, &part.x2, &part.x3}) std::sort(set->begin(), set->end());

  for (auto g : part.x2) {
    if (!is_zero(epi.images[g])) {
      throw InvariantViolation("X2 generator '" + names[g] +
                               "' has nonzero image in G/K");
    }
  }
  for (auto g : part.x3) {
    if (!is_zero(epi.images[g])) {
      throw InvariantViolation("X3 generator '" + names[g] +
                               "' has nonzero image in G/K");
    }
  }
  {
    std::vector<FpVector> imgs;
    for (auto g : part.x1) imgs.push_back(epi.images[g]);
    if (part.x1.size() != epi.n || span_rank(imgs, epi.n, p) != epi.n) {
      throw InvariantViolation("X1 images do not form a basis of G/K");
    }
  }

  NormalizedPresentation out;
  out.base = pres;
  out.p = p;
  out.x1 = part.x1;
  out.x2 = part.x2;
  out.x3 = part.x3;

  for (auto g : part.x3) {
    const auto it = witnesses.find(g);
    if (it == witnesses.end()) {
      throw InvariantViolation("witness missing for X3 generator '" +
                               names[g] + "'");
    }
    const auto v = exponent_vector(it->second, ngen, p);
    for (std::size_t h = 0; h < ngen; ++h) {
      if (v[h]) {
        throw InvariantViolation("witness for '" + names[g] +
                                 "' has nonzero exponent sum mod p on '" +
                                 names[h] + "'");
      }
    }
    out.witnesses[g] = it->second;
  }
  for (const auto& [g, w] : witnesses) {
    if (g >= ngen || owner[g] != 3) {
      throw InvariantViolation("witness supplied for a generator outside X3");
    }
  }

  std::set<GeneratorId> killed;
  for (std::size_t ri = 0; ri < pres.relator_count(); ++ri) {
    const Word& r = pres.relators[ri];
    bool is_r3 = false;
    for (auto g : part.x3) {
      if (r == Word::generator(g, -1) * out.witnesses[g]) {
        out.r3.push_back(ri);
        killed.insert(g);
        is_r3 = true;
        break;
      }
    }
    if (is_r3) continue;
    const auto v = exponent_vector(r, ngen, p);
    for (std::size_t h = 0; h < ngen; ++h) {
      if (v[h]) {
        throw InvariantViolation(
            "relator " + std::to_string(ri + 1) + " (" + format_word(r, names) +
            ") is neither in [F,F]F^p (exponent of '" + names[h] +
            "' is nonzero mod p) nor of the form x3^-1 f(x3)");
      }
    }
    const auto sums = exponent_sums(r, ngen);
    const bool x3_free = std::all_of(part.x3.begin(), part.x3.end(),
                                     [&](auto g) { return sums[g] == 0; });
    (x3_free ? out.r1 : out.r2).push_back(ri);
  }
  for (auto g : part.x3) {
    if (!killed.count(g)) {
      throw InvariantViolation("X3 generator '" + names[g] +
                               "' has no relator of the form x3^-1 f(x3)");
    }
  }
  return out;
}

}  // namespace homgrow
