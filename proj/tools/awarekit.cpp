// awarekit command-line front end. Exit codes: 0 pass, 1 violation found, 2 input error.

#include "awarekit/awarekit.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace awarekit;

namespace {

enum class Format { Text, Data };

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct Output {
  Format format = Format::Text;
  json extra = json::object();

  int finish(const Report& r) {
    if (format == Format::Data) {
      json j = extra;
      j["report"] = to_json(r);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << r;
    }
    return r.ok() ? kPass : kViolation;
  }
};

std::set<std::string> agent_set(const AnyModel& m) {
  return std::visit(
      [](const auto& x) -> std::set<std::string> {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, FHModel>)
          return {x.agents.begin(), x.agents.end()};
        else if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ImplicitHMSModel>)
          return {x.frame.agents().begin(), x.frame.agents().end()};
        else if constexpr (std::is_same_v<std::decay_t<decltype(x)>, HMSModel>)
          return {x.frame.agents().begin(), x.frame.agents().end()};
        else
          return {x.lattice().agents().begin(), x.lattice().agents().end()};
      },
      m);
}

const Lattice* lattice_of(const AnyModel& m) {
  if (auto* h = std::get_if<HMSModel>(&m))
    return &h->frame;
  if (auto* c = std::get_if<ComplementedHMSModel>(&m))
    return &c->lattice();
  if (auto* im = std::get_if<ImplicitHMSModel>(&m))
    return &im->frame;
  return nullptr;
}

Report validate_any(const AnyModel& m, bool suites) {
  Report r;
  if (auto* k = std::get_if<FHModel>(&m)) {
    r = validate_fh(*k);
    if (suites && r.ok())
      r.merge(category_equivalence_suite(build_category(*k)), "category.");
  } else if (auto* h = std::get_if<HMSModel>(&m)) {
    r = validate_hms(*h);
    if (suites && r.ok())
      r.merge(explicit_property_suite(*h), "explicit.");
  } else if (auto* c = std::get_if<ComplementedHMSModel>(&m)) {
    r = validate_lambda(*c);
    if (suites && r.ok()) {
      r.merge(explicit_property_suite(c->base), "explicit.");
      r.merge(implicit_property_suite(*c), "implicit.");
    }
  } else {
    const auto& im = std::get<ImplicitHMSModel>(m);
    r = validate_implicit(im);
    if (suites && r.ok())
      r.merge(derivation_property_suite(im), "derivation.");
  }
  return r;
}

template <class T>
const T& expect_kind(const AnyModel& m, const std::string& file, std::string_view kind) {
  if (auto* x = std::get_if<T>(&m))
    return *x;
  throw ModelError(ErrorCode::InvalidInput,
                   "'" + file + "' is a " + std::string(kind_name(m)) + " model, expected " + std::string(kind));
}

GenCaps caps_from(int atoms, int worlds, int agents) { return GenCaps{atoms, worlds, agents}; }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"awarekit: models of awareness and unawareness"};
  app.require_subcommand(1);
  std::string format_name = "text";
  app.add_option("--format", format_name, "output style")->check(CLI::IsMember({"text", "data"}));

  // validate
  auto* validate = app.add_subcommand("validate", "run the validators for a model file");
  std::string v_file;
  bool v_dot = false, v_suites = false;
  validate->add_option("file", v_file)->required();
  validate->add_flag("--dot", v_dot, "print the lattice of spaces as DOT instead");
  validate->add_flag("--suites", v_suites, "also run the property suites");

  // check
  auto* check = app.add_subcommand("check", "evaluate a formula");
  std::string c_file, c_formula, c_state;
  bool c_all = false;
  check->add_option("file", c_file)->required();
  check->add_option("--formula", c_formula)->required();
  check->add_option("--state", c_state, "\"space:id\" for HMS models, a world id for FH models");
  check->add_flag("--all", c_all, "every state (the default when --state is absent)");

  // transform
  auto* transform = app.add_subcommand("transform", "transform a model");
  std::string t_file, t_to, t_out, t_dump;
  bool t_minimize = false;
  transform->add_option("file", t_file)->required();
  transform->add_option("--to", t_to)->required()->check(CLI::IsMember({"hms", "implicit-hms", "fh", "fh-star"}));
  transform->add_option("--out", t_out);
  transform->add_option("--dump-category", t_dump, "write the FH category to this directory");
  transform->add_flag("--minimize", t_minimize, "quotient sublanguage models by modal equivalence");

  // equiv
  auto* equiv = app.add_subcommand("equiv", "check that b is modally equivalent to a under a transform");
  std::string e_a, e_b, e_via;
  int e_depth = 2;
  std::size_t e_cap = 3000;
  equiv->add_option("a", e_a)->required();
  equiv->add_option("b", e_b)->required();
  equiv->add_option("--via", e_via)->required()->check(CLI::IsMember({"hms", "implicit-hms", "fh", "fh-star"}));
  equiv->add_option("--depth", e_depth)->check(CLI::Range(0, 4));
  equiv->add_option("--cap", e_cap);

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "run the property suites on generated models");
  int f_trials = 100, f_atoms = 3, f_worlds = 5, f_agents = 2, f_depth = 2;
  std::uint64_t f_seed = 1;
  std::string f_suite = "all";
  fuzz->add_option("--trials", f_trials)->check(CLI::NonNegativeNumber);
  fuzz->add_option("--atoms", f_atoms);
  fuzz->add_option("--worlds", f_worlds);
  fuzz->add_option("--agents", f_agents);
  fuzz->add_option("--seed", f_seed);
  fuzz->add_option("--depth", f_depth)->check(CLI::Range(0, 4));
  fuzz->add_option("--suite", f_suite)
      ->check(CLI::IsMember({"explicit", "implicit", "derivation", "category", "transforms", "lpa", "all"}));
  std::string f_mutation = "none";
  fuzz->add_option("--mutation", f_mutation, "run with one semantic fault switched on");

  // lpa
  auto* lpa = app.add_subcommand("lpa", "proof checking and soundness fuzzing");
  lpa->require_subcommand(1);
  auto* lpa_check = lpa->add_subcommand("check", "check a proof file");
  std::string l_proof;
  lpa_check->add_option("proof", l_proof)->required();
  auto* lpa_fuzz = lpa->add_subcommand("fuzz", "fuzz schema instances against the model classes");
  FuzzOptions lf;
  lpa_fuzz->add_option("--trials", lf.trials)->check(CLI::NonNegativeNumber);
  lpa_fuzz->add_option("--depth", lf.depth)->check(CLI::Range(0, 4));
  lpa_fuzz->add_option("--instances", lf.instances);
  lpa_fuzz->add_option("--seed", lf.seed);
  lpa_fuzz->add_option("--atoms", lf.caps.atoms);
  lpa_fuzz->add_option("--worlds", lf.caps.worlds);
  lpa_fuzz->add_option("--agents", lf.caps.agents);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random model");
  std::uint64_t g_seed = 1;
  std::string g_kind = "fh", g_out;
  int g_atoms = 2, g_worlds = 4, g_agents = 1;
  gen->add_option("--seed", g_seed);
  gen->add_option("--kind", g_kind)->check(CLI::IsMember({"fh", "hms", "implicit-hms"}));
  gen->add_option("--atoms", g_atoms);
  gen->add_option("--worlds", g_worlds);
  gen->add_option("--agents", g_agents);
  gen->add_option("--out", g_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  Output out;
  out.format = format_name == "data" ? Format::Data : Format::Text;

  try {
    if (*validate) {
      AnyModel m = load_model(v_file);
      if (v_dot) {
        const Lattice* l = lattice_of(m);
        if (!l)
          throw ModelError(ErrorCode::InvalidInput, "--dot needs an HMS model");
        std::cout << lattice_dot(*l);
        return kPass;
      }
      out.extra["kind"] = kind_name(m);
      return out.finish(validate_any(m, v_suites));
    }

    if (*check) {
      AnyModel m = load_model(c_file);
      Formula f = parse(c_formula, agent_set(m));
      Report r = validate_any(m, false);
      require_valid(r, c_file);
      json rows = json::array();
      auto emit = [&](const std::string& state, std::string_view value) {
        rows.push_back({{"state", state}, {"value", value}});
      };
      if (auto* k = std::get_if<FHModel>(&m)) {
        FhEvaluator ev(*k);
        const WorldSet& ext = ev.extension(f);
        if (!c_state.empty() && !c_all)
          emit(c_state, ext.test(k->world_index(c_state)) ? "True" : "False");
        else
          for (int w = 0; w < k->world_count(); ++w)
            emit(k->worlds[w], ext.test(w) ? "True" : "False");
      } else {
        std::optional<HmsSemantics> sem;
        if (auto* c = std::get_if<ComplementedHMSModel>(&m))
          sem.emplace(*c);
        else if (auto* im = std::get_if<ImplicitHMSModel>(&m))
          sem.emplace(*im);
        else
          throw ModelError(ErrorCode::InvalidInput, "check needs a complemented, implicit or FH model (plain HMS models have no implicit knowledge)");
        const Lattice& l = sem->lattice();
        if (!c_state.empty() && !c_all)
          emit(c_state, to_string(sem->satisfies(c_state, f)));
        else
          for (int g = 0; g < l.state_count(); ++g)
            emit(l.state_name(g), to_string(sem->satisfies(g, f)));
      }
      if (out.format == Format::Data) {
        std::cout << json{{"formula", render(f)}, {"results", rows}, {"report", to_json(Report{})}}.dump(2) << "\n";
      } else if (rows.size() == 1 && !c_all) {
        std::cout << rows[0]["value"].get<std::string>() << "\n";
      } else {
        for (const auto& row : rows)
          std::cout << row["state"].get<std::string>() << "\t" << row["value"].get<std::string>() << "\n";
      }
      return kPass;
    }

    if (*transform) {
      AnyModel m = load_model(t_file);
      AnyModel result;
      if (t_to == "hms" || t_to == "implicit-hms") {
        const auto& k = expect_kind<FHModel>(m, t_file, "fh");
        if (!t_dump.empty())
          dump_category(build_category(k, {t_minimize}), t_dump);
        if (t_to == "hms")
          result = hms_transform(k, {t_minimize});
        else
          result = truncated_hms_transform(k, {t_minimize});
      } else if (t_to == "fh") {
        result = fh_transform(expect_kind<ComplementedHMSModel>(m, t_file, "complemented-hms"));
      } else {
        result = fh_star_transform(expect_kind<ImplicitHMSModel>(m, t_file, "implicit-hms"));
      }
      json j = to_json(result);
      if (t_out.empty())
        std::cout << j.dump(2) << "\n";
      else
        save_json(j, t_out);
      return kPass;
    }

    if (*equiv) {
      AnyModel a = load_model(e_a);
      AnyModel b = load_model(e_b);
      EnumOptions eo;
      eo.depth = e_depth;
      eo.cap = e_cap;
      Report r;
      switch (*parse_via(e_via)) {
      case Via::Hms:
        r = equivalence_fh_to_hms(expect_kind<FHModel>(a, e_a, "fh"), expect_kind<ComplementedHMSModel>(b, e_b, "complemented-hms"), eo);
        break;
      case Via::ImplicitHms:
        r = equivalence_fh_to_implicit(expect_kind<FHModel>(a, e_a, "fh"), expect_kind<ImplicitHMSModel>(b, e_b, "implicit-hms"), eo);
        break;
      case Via::Fh:
        r = equivalence_hms_to_fh(expect_kind<ComplementedHMSModel>(a, e_a, "complemented-hms"), expect_kind<FHModel>(b, e_b, "fh"), eo);
        break;
      case Via::FhStar:
        r = equivalence_implicit_to_fh(expect_kind<ImplicitHMSModel>(a, e_a, "implicit-hms"), expect_kind<FHModel>(b, e_b, "fh"), eo);
        break;
      }
      json ce = json::array();
      for (const auto& v : r.violations)
        ce.push_back(v.witness);
      out.extra["counterexamples"] = ce;
      return out.finish(r);
    }

    if (*fuzz) {
      GenCaps caps = caps_from(f_atoms, f_worlds, f_agents);
      check_caps(caps);
      EnumOptions eo;
      eo.depth = f_depth;
      std::optional<Mutation> mut;
      for (Mutation m : all_mutations)
        if (to_string(m) == f_mutation)
          mut = m;
      if (!mut && f_mutation != "none")
        throw ModelError(ErrorCode::InvalidInput, "unknown mutation '" + f_mutation + "'");
      mutation::Scoped scope(mut.value_or(Mutation::None));
      SuiteOptions so;
      so.caps = caps;
      so.trials = f_trials;
      so.seed = f_seed;
      so.enumeration = eo;
      so.fixtures = false;
      Report r;
      for (Suite s : all_suites)
        if (f_suite == "all" || f_suite == to_string(s))
          r.merge(run_suite(s, so), std::string(to_string(s)) + ": ");
      out.extra["trials"] = f_trials;
      return out.finish(r);
    }

    if (*lpa_check) {
      ProofVerdict v = check_proof(load_proof(l_proof));
      Report r;
      r.expect(v.accepted, "proof", v.accepted ? "" : "line " + std::to_string(v.failing_line) + ": " + v.reason);
      out.extra["accepted"] = v.accepted;
      if (!v.accepted)
        out.extra["failing_line"] = v.failing_line;
      if (out.format == Format::Text) {
        if (v.accepted)
          std::cout << "accepted\n";
        else
          std::cout << "rejected at line " << v.failing_line << ": " << v.reason << "\n";
        return v.accepted ? kPass : kViolation;
      }
      return out.finish(r);
    }

    if (*lpa_fuzz) {
      check_caps(lf.caps);
      FuzzStats st;
      Report r = fuzz_soundness(lf, &st);
      out.extra["instances"] = st.instances_checked;
      out.extra["rule_checks"] = st.rule_checks;
      return out.finish(r);
    }

    if (*gen) {
      GenCaps caps = caps_from(g_atoms, g_worlds, g_agents);
      json j;
      if (g_kind == "fh")
        j = to_json(gen_fh(g_seed, caps));
      else if (g_kind == "hms")
        j = to_json(gen_hms(g_seed, caps));
      else
        j = to_json(gen_implicit(g_seed, caps));
      if (g_out.empty())
        std::cout << j.dump(2) << "\n";
      else
        save_json(j, g_out);
      return kPass;
    }
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kPass;
}
