#pragma once

// The Logic of Propositional Awareness: axiom schemata, a Hilbert-style
// proof checker, and a soundness fuzzer against the three model classes.
//
// Schemata are formulas whose atoms "$phi", "$psi" are formula variables and
// whose agents "$i", "$j" are agent variables. Propositional tautologies are
// recognized by truth-tabling the skeleton with maximal modal subformulas
// treated as letters.

#include "awarekit/genmodels.hpp"
#include "awarekit/semantics.hpp"

#include <json.hpp>

#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace awarekit {

struct Substitution {
  std::map<std::string, Formula> formulas; // "phi", "psi"
  std::map<std::string, std::string> agents; // "i", "j"

  bool operator==(const Substitution&) const = default;
};

inline std::string to_string(const Substitution& s) {
  std::string out;
  auto sep = [&] {
    if (!out.empty())
      out += "; ";
  };
  for (const auto& [k, f] : s.formulas) {
    sep();
    out += k + "=" + render(f);
  }
  for (const auto& [k, a] : s.agents) {
    sep();
    out += k + "=" + a;
  }
  return out;
}

namespace detail {

inline Formula var(const char* n) { return Formula::atom(std::string("$") + n); }
inline Formula L(const char* ag, const Formula& f) { return Formula::implicit(std::string("$") + ag, f); }
inline Formula A(const char* ag, const Formula& f) { return Formula::aware(std::string("$") + ag, f); }
inline Formula Kn(const char* ag, const Formula& f) { return Formula::knows(std::string("$") + ag, f); }

struct Schema {
  std::string_view name;
  Formula pattern;
};

inline const std::vector<Schema>& schemata() {
  static const std::vector<Schema> all = [] {
    using F = Formula;
    const F phi = var("phi"), psi = var("psi");
    return std::vector<Schema>{
        {"l-dist", F::implies(F::conj(L("i", phi), F::implies(L("i", phi), L("i", psi))), L("i", psi))},
        {"k-def", F::iff(Kn("i", phi), F::conj(L("i", phi), A("i", phi)))},
        {"a-and", F::iff(A("i", F::conj(phi, psi)), F::conj(A("i", phi), A("i", psi)))},
        {"a-neg", F::iff(A("i", F::negation(phi)), A("i", phi))},
        {"a-k", F::iff(A("i", Kn("j", phi)), A("i", phi))},
        {"a-a", F::iff(A("i", A("j", phi)), A("i", phi))},
        {"a-l", F::iff(A("i", L("j", phi)), A("i", phi))},
        {"a-intro", F::implies(A("i", phi), L("i", A("i", phi)))},
        {"na-intro", F::implies(F::negation(A("i", phi)), L("i", F::negation(A("i", phi))))},
        {"T", F::implies(L("i", phi), phi)},
        {"4", F::implies(L("i", phi), L("i", L("i", phi)))},
        {"5", F::implies(F::negation(L("i", phi)), L("i", F::negation(L("i", phi))))},
    };
  }();
  return all;
}

inline bool match(const Formula& pat, const Formula& f, Substitution& s) {
  if (pat.op() == Op::Atom && !pat.name().empty() && pat.name()[0] == '$') {
    std::string key = pat.name().substr(1);
    auto [it, fresh] = s.formulas.emplace(key, f);
    return fresh || it->second == f;
  }
  if (pat.op() != f.op())
    return false;
  switch (pat.op()) {
  case Op::Top: return true;
  case Op::Atom: return pat.name() == f.name();
  case Op::Not: return match(pat.child(), f.child(), s);
  case Op::And: return match(pat.left(), f.left(), s) && match(pat.right(), f.right(), s);
  default: {
    const std::string& ag = pat.agent();
    if (!ag.empty() && ag[0] == '$') {
      auto [it, fresh] = s.agents.emplace(ag.substr(1), f.agent());
      if (!fresh && it->second != f.agent())
        return false;
    } else if (ag != f.agent()) {
      return false;
    }
    return match(pat.child(), f.child(), s);
  }
  }
}

inline Formula substitute(const Formula& pat, const Substitution& s) {
  switch (pat.op()) {
  case Op::Top: return pat;
  case Op::Atom: {
    if (pat.name().empty() || pat.name()[0] != '$')
      return pat;
    auto it = s.formulas.find(pat.name().substr(1));
    if (it == s.formulas.end())
      throw ModelError(ErrorCode::InvalidInput, "substitution lacks '" + pat.name().substr(1) + "'");
    return it->second;
  }
  case Op::Not: return Formula::negation(substitute(pat.child(), s));
  case Op::And: return Formula::conj(substitute(pat.left(), s), substitute(pat.right(), s));
  default: {
    std::string ag = pat.agent();
    if (!ag.empty() && ag[0] == '$') {
      auto it = s.agents.find(ag.substr(1));
      if (it == s.agents.end())
        throw ModelError(ErrorCode::InvalidInput, "substitution lacks agent '" + ag.substr(1) + "'");
      ag = it->second;
    }
    return Formula::modal(pat.op(), ag, substitute(pat.child(), s));
  }
  }
}

/// Propositional tautology shapes used to sample "taut" lines when fuzzing.
inline const std::vector<Formula>& tautology_shapes() {
  static const std::vector<Formula> all = [] {
    using F = Formula;
    const F phi = var("phi"), psi = var("psi");
    return std::vector<F>{
        F::implies(phi, F::implies(psi, phi)),
        F::iff(F::negation(F::negation(phi)), phi),
        F::implies(F::conj(phi, psi), F::disj(psi, phi)),
        F::implies(F::conj(F::implies(phi, psi), F::negation(psi)), F::negation(phi)),
    };
  }();
  return all;
}

inline const Schema* find_schema(std::string_view name) {
  for (const auto& s : schemata())
    if (s.name == name)
      return &s;
  return nullptr;
}

} // namespace detail

/// Names of the axiom schemata, in listing order.
inline std::vector<std::string> schema_names() {
  std::vector<std::string> out;
  for (const auto& s : detail::schemata())
    out.emplace_back(s.name);
  return out;
}

/// Names of the two inference rules.
inline const std::array<std::string_view, 2>& rule_names() {
  static const std::array<std::string_view, 2> names{"mp", "nec"};
  return names;
}

/// The assignment making schema `name` syntactically equal to `f`, if any.
/// Throws InvalidInput for names that are neither schemata nor rules.
inline std::optional<Substitution> match_schema(std::string_view name, const Formula& f) {
  const auto* s = detail::find_schema(name);
  if (!s) {
    if (name == "mp" || name == "nec")
      return std::nullopt;
    throw ModelError(ErrorCode::InvalidInput, "unknown schema '" + std::string(name) + "'");
  }
  Substitution sub;
  if (!detail::match(s->pattern, f, sub))
    return std::nullopt;
  return sub;
}

inline Formula instantiate(std::string_view name, const Substitution& sub) {
  const auto* s = detail::find_schema(name);
  if (!s)
    throw ModelError(ErrorCode::InvalidInput, "unknown schema '" + std::string(name) + "'");
  return detail::substitute(s->pattern, sub);
}

// ---------------------------------------------------------------------------
// Propositional skeleton.

namespace detail {

inline void skeleton_letters(const Formula& f, std::unordered_map<Formula, int, FormulaHash>& letters) {
  switch (f.op()) {
  case Op::Top: return;
  case Op::Not: skeleton_letters(f.child(), letters); return;
  case Op::And:
    skeleton_letters(f.left(), letters);
    skeleton_letters(f.right(), letters);
    return;
  default: letters.emplace(f, static_cast<int>(letters.size())); return;
  }
}

inline bool skeleton_value(const Formula& f, const std::unordered_map<Formula, int, FormulaHash>& letters,
                           std::uint32_t row) {
  switch (f.op()) {
  case Op::Top: return true;
  case Op::Not: return !skeleton_value(f.child(), letters, row);
  case Op::And: return skeleton_value(f.left(), letters, row) && skeleton_value(f.right(), letters, row);
  default: return (row >> letters.at(f)) & 1U;
  }
}

} // namespace detail

inline constexpr int max_skeleton_letters = 20;

/// True iff f is a substitution instance of a propositional tautology, i.e. its
/// skeleton (atoms and maximal modal subformulas as letters) is true in every row.
inline bool is_tautology(const Formula& f) {
  std::unordered_map<Formula, int, FormulaHash> letters;
  detail::skeleton_letters(f, letters);
  if (static_cast<int>(letters.size()) > max_skeleton_letters)
    throw ModelError(ErrorCode::InvalidInput, "propositional skeleton has more than " +
                                                  std::to_string(max_skeleton_letters) + " letters");
  const std::uint32_t rows = std::uint32_t{1} << letters.size();
  for (std::uint32_t row = 0; row < rows; ++row)
    if (!detail::skeleton_value(f, letters, row))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Proofs.

struct ProofLine {
  std::string formula_text;
  std::string by;
  std::optional<Formula> formula; // empty if formula_text does not parse
  std::string parse_error;
};

struct ProofVerdict {
  bool accepted = true;
  int failing_line = 0; // 1-based; 0 when accepted
  std::string reason;
};

inline ProofLine make_line(std::string formula_text, std::string by) {
  ProofLine l{std::move(formula_text), std::move(by), std::nullopt, {}};
  try {
    l.formula = parse(l.formula_text);
  } catch (const SyntaxError& e) {
    l.parse_error = e.what();
  }
  return l;
}

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok)
    out.push_back(tok);
  return out;
}

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

/// "phi=p; psi=(q & r); i=1" -> substitution.
inline Substitution parse_substitution(std::string_view text) {
  Substitution s;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t semi = text.find(';', start);
    std::string part = trim(text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
    start = semi == std::string_view::npos ? text.size() : semi + 1;
    if (part.empty())
      continue;
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw ModelError(ErrorCode::InvalidInput, "substitution entry '" + part + "' lacks '='");
    std::string key = trim(part.substr(0, eq));
    std::string value = trim(part.substr(eq + 1));
    if (key == "phi" || key == "psi")
      s.formulas.emplace(key, parse(value));
    else if (key == "i" || key == "j")
      s.agents.emplace(key, value);
    else
      throw ModelError(ErrorCode::InvalidInput, "unknown substitution variable '" + key + "'");
  }
  return s;
}

inline std::optional<int> line_ref(const std::string& tok, int current) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 1 || v >= current)
      return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

} // namespace detail

/// Accepts iff every line is a tautology instance, a schema instance, or
/// follows from earlier lines by modus ponens or l-necessitation.
inline ProofVerdict check_proof(const std::vector<ProofLine>& lines) {
  auto fail = [](int n, std::string why) { return ProofVerdict{false, n, std::move(why)}; };
  for (int n = 1; n <= static_cast<int>(lines.size()); ++n) {
    const ProofLine& line = lines[n - 1];
    if (!line.formula)
      return fail(n, "formula does not parse: " + line.parse_error);
    const Formula& f = *line.formula;
    const std::string by = detail::trim(line.by);
    if (by == "taut") {
      bool ok = false;
      try {
        ok = is_tautology(f);
      } catch (const ModelError& e) {
        return fail(n, e.what());
      }
      if (!ok)
        return fail(n, "not a propositional tautology");
    } else if (by.rfind("ax:", 0) == 0) {
      std::string rest = by.substr(3);
      auto space = rest.find_first_of(" \t");
      std::string name = rest.substr(0, space);
      std::string subst = space == std::string::npos ? std::string() : rest.substr(space + 1);
      if (!detail::find_schema(name))
        return fail(n, "unknown schema '" + name + "'");
      auto sub = match_schema(name, f);
      if (!sub)
        return fail(n, "not an instance of schema '" + name + "'");
      if (!detail::trim(subst).empty()) {
        try {
          Substitution given = detail::parse_substitution(subst);
          if (instantiate(name, given) != f)
            return fail(n, "stated substitution does not produce the line");
        } catch (const std::exception& e) {
          return fail(n, std::string("bad substitution: ") + e.what());
        }
      }
    } else {
      auto toks = detail::split_ws(by);
      if (toks.size() == 3 && toks[0] == "mp") {
        auto i = detail::line_ref(toks[1], n);
        auto j = detail::line_ref(toks[2], n);
        if (!i || !j)
          return fail(n, "mp cites a line that does not precede it");
        const auto& a = lines[*i - 1].formula;
        const auto& b = lines[*j - 1].formula;
        bool ok = (a && b && *b == Formula::implies(*a, f)) || (a && b && *a == Formula::implies(*b, f));
        if (!ok)
          return fail(n, "mp: neither cited line is an implication from the other to this line");
      } else if (toks.size() == 2 && toks[0] == "nec") {
        auto i = detail::line_ref(toks[1], n);
        if (!i)
          return fail(n, "nec cites a line that does not precede it");
        const auto& a = lines[*i - 1].formula;
        if (!(f.op() == Op::Implicit && a && f.child() == *a))
          return fail(n, "nec: line is not l_i of the cited line");
      } else {
        return fail(n, "unrecognized justification '" + by + "'");
      }
    }
  }
  return {};
}

/// One JSON object per line with "formula" and "by"; blank lines are skipped.
inline std::vector<ProofLine> parse_proof(std::istream& in) {
  std::vector<ProofLine> out;
  std::string text;
  int lineno = 0;
  while (std::getline(in, text)) {
    ++lineno;
    if (detail::trim(text).empty())
      continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ModelError(ErrorCode::InvalidInput, "proof file line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("formula") || !j.contains("by") || !j["formula"].is_string() ||
        !j["by"].is_string())
      throw ModelError(ErrorCode::InvalidInput,
                       "proof file line " + std::to_string(lineno) + ": expected string fields 'formula' and 'by'");
    out.push_back(make_line(j["formula"].get<std::string>(), j["by"].get<std::string>()));
  }
  return out;
}

inline std::vector<ProofLine> load_proof(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ModelError(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  return parse_proof(in);
}

// ---------------------------------------------------------------------------
// Soundness fuzzing.

struct FuzzOptions {
  int trials = 200;
  GenCaps caps{3, 4, 2};
  int depth = 2;
  int instances = 3; // random instantiations per schema per trial
  std::uint64_t seed = 1;
};

struct FuzzStats {
  std::size_t instances_checked = 0;
  std::size_t rule_checks = 0;
};

/// For every trial, generates an FH model, its category, its HMS transform
/// and its truncated transform; checks each random schema instance for
/// validity in all three, that l-necessitation of the instance stays valid,
/// and that modus ponens preserves validity on sampled pairs.
inline Report fuzz_soundness(const FuzzOptions& opts, FuzzStats* stats = nullptr) {
  Report r;
  FuzzStats local;
  FuzzStats& st = stats ? *stats : local;
  for (int t = 0; t < opts.trials; ++t) {
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(t);
    FHModel k = gen_fh(seed, opts.caps);
    const bool minimize = detail::pick_minimize(seed, Minimize::BySeed);
    FHCategory cat;
    std::optional<ComplementedHMSModel> hms;
    std::optional<ImplicitHMSModel> imp;
    try {
      cat = build_category(k, {minimize});
      imp = t_transform(cat);
      hms = hms_transform(k, {minimize});
    } catch (const ModelError& e) {
      r.add("fuzz.model-construction", "seed " + std::to_string(seed) + ": " + e.what());
      continue;
    }
    std::optional<HmsSemantics> sh, si;
    try {
      sh.emplace(*hms);
      si.emplace(*imp);
    } catch (const ModelError& e) {
      r.add("fuzz.model-construction", "seed " + std::to_string(seed) + ": " + e.what());
      continue;
    }
    auto check = [&](const Formula& f, const std::string& what) {
      bool ok = true;
      auto c = valid_in_category(cat, f);
      if (!c.valid) {
        ok = false;
        r.add(what + ".fh-category", render(f) + " fails at " + *c.witness + " (seed " + std::to_string(seed) + ")");
      }
      auto h = valid_in(*sh, f);
      if (!h.valid) {
        ok = false;
        r.add(what + ".complemented-hms",
              render(f) + " fails at " + *h.witness + " (seed " + std::to_string(seed) + ")");
      }
      auto i = valid_in(*si, f);
      if (!i.valid) {
        ok = false;
        r.add(what + ".implicit-hms", render(f) + " fails at " + *i.witness + " (seed " + std::to_string(seed) + ")");
      }
      ++r.checks;
      return ok;
    };
    auto valid_everywhere = [&](const Formula& f) {
      return valid_in_category(cat, f).valid && valid_in(*sh, f).valid && valid_in(*si, f).valid;
    };
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + 17);
    auto pick_agent = [&] { return k.agents[detail::uniform(rng, 0, static_cast<int>(k.agents.size()) - 1)]; };
    std::vector<Formula> valid_instances;
    for (const auto& schema : detail::schemata()) {
      for (int n = 0; n < opts.instances; ++n) {
        Substitution s;
        s.formulas.emplace("phi", random_formula(rng, k.atoms, k.agents, opts.depth));
        s.formulas.emplace("psi", random_formula(rng, k.atoms, k.agents, opts.depth));
        s.agents.emplace("i", pick_agent());
        s.agents.emplace("j", pick_agent());
        Formula f = detail::substitute(schema.pattern, s);
        ++st.instances_checked;
        if (check(f, "schema " + std::string(schema.name)))
          valid_instances.push_back(f);
      }
    }
    for (int n = 0; n < opts.instances; ++n) {
      Substitution s;
      s.formulas.emplace("phi", random_formula(rng, k.atoms, k.agents, opts.depth));
      s.formulas.emplace("psi", random_formula(rng, k.atoms, k.agents, opts.depth));
      const auto& shapes = detail::tautology_shapes();
      Formula f = detail::substitute(shapes[static_cast<std::size_t>(n) % shapes.size()], s);
      ++st.instances_checked;
      if (is_tautology(f) && check(f, "taut"))
        valid_instances.push_back(f);
    }
    // Rules.
    for (const auto& f : valid_instances) {
      ++st.rule_checks;
      check(Formula::implicit(pick_agent(), f), "rule nec");
    }
    for (int n = 0; n < opts.instances * 4 && !valid_instances.empty(); ++n) {
      const Formula& a = valid_instances[detail::uniform(rng, 0, static_cast<int>(valid_instances.size()) - 1)];
      Formula b = detail::uniform(rng, 0, 1) == 0
                      ? random_formula(rng, k.atoms, k.agents, opts.depth)
                      : valid_instances[detail::uniform(rng, 0, static_cast<int>(valid_instances.size()) - 1)];
      Formula imp_ab = Formula::implies(a, b);
      ++st.rule_checks;
      if (valid_everywhere(imp_ab))
        check(b, "rule mp");
    }
  }
  return r;
}

} // namespace awarekit
