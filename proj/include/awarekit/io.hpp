#pragma once

// Model files (JSON), report serialization, category dumps and DOT export.
// The key spellings are documented in docs/file-formats.md.

#include "awarekit/fh.hpp"
#include "awarekit/implicit.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace awarekit {

using json = nlohmann::json;

using AnyModel = std::variant<FHModel, HMSModel, ComplementedHMSModel, ImplicitHMSModel>;

inline std::string_view kind_name(const AnyModel& m) {
  switch (m.index()) {
  case 0: return "fh";
  case 1: return "hms";
  case 2: return "complemented-hms";
  default: return "implicit-hms";
  }
}

namespace detail {

[[noreturn]] inline void bad_input(const std::string& what) { throw ModelError(ErrorCode::InvalidInput, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    bad_input(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array())
    bad_input(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string())
      bad_input(what + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline Correspondence read_correspondence(const Lattice& l, const json& j, const std::string& what) {
  Correspondence c(l.state_count(), l.empty_set());
  if (!j.is_object())
    bad_input(what + " must map states to state arrays");
  for (const auto& [from, to] : j.items()) {
    int g = l.state_ref(from);
    for (const auto& ref : string_list(to, what + "[" + from + "]"))
      c[g].set(l.state_ref(ref));
  }
  return c;
}

inline std::vector<Correspondence> read_agent_correspondences(const Lattice& l, const json& j, const std::string& what) {
  std::vector<Correspondence> out(l.agent_count(), Correspondence(l.state_count(), l.empty_set()));
  if (!j.is_object())
    bad_input(what + " must map agents to correspondences");
  for (const auto& [agent, corr] : j.items())
    out[l.agent_index(agent)] = read_correspondence(l, corr, what + "[" + agent + "]");
  return out;
}

inline Lattice read_lattice(const json& j) {
  auto atoms = string_list(field(j, "atoms"), "atoms");
  auto agents = string_list(field(j, "agents"), "agents");
  LatticeBuilder b(atoms, agents);
  const Lattice& names = b.partial();
  const json& spaces = field(j, "spaces");
  if (!spaces.is_object())
    bad_input("'spaces' must map space keys to state-id arrays");
  for (const auto& [key, ids] : spaces.items())
    b.add_space(names.parse_space_key(key), string_list(ids, "spaces[" + key + "]"));
  if (j.contains("projections")) {
    const json& proj = j.at("projections");
    if (!proj.is_object())
      bad_input("'projections' must map \"from->to\" keys to state maps");
    for (const auto& [key, map] : proj.items()) {
      auto arrow = key.find("->");
      if (arrow == std::string::npos)
        bad_input("projection key '" + key + "' lacks '->'");
      AtomMask phi = names.parse_space_key(key.substr(0, arrow));
      AtomMask psi = names.parse_space_key(key.substr(arrow + 2));
      if (!map.is_object())
        bad_input("projection '" + key + "' must map state ids to state ids");
      std::map<std::string, std::string> ids;
      for (const auto& [from, to] : map.items()) {
        if (!to.is_string())
          bad_input("projection '" + key + "' must map state ids to state ids");
        ids.emplace(from, to.get<std::string>());
      }
      b.add_projection(phi, psi, ids);
    }
  }
  if (j.contains("valuation")) {
    const json& val = j.at("valuation");
    if (!val.is_object())
      bad_input("'valuation' must map atoms to {base_space, base}");
    for (const auto& [atom, ev] : val.items()) {
      auto a = names.atom_index(atom);
      if (!a)
        throw ModelError(ErrorCode::UnknownAtom, "valuation of '" + atom + "'");
      const json& bs = field(ev, "base_space");
      if (!bs.is_string())
        bad_input("valuation[" + atom + "].base_space must be a space key");
      b.set_valuation(*a, names.parse_space_key(bs.get<std::string>()),
                      string_list(field(ev, "base"), "valuation[" + atom + "].base"));
    }
  }
  return b.build();
}

inline FHModel read_fh(const json& j) {
  FHModel k;
  k.atoms = string_list(field(j, "atoms"), "atoms");
  std::sort(k.atoms.begin(), k.atoms.end());
  if (std::adjacent_find(k.atoms.begin(), k.atoms.end()) != k.atoms.end())
    bad_input("duplicate atom names");
  if (static_cast<int>(k.atoms.size()) > max_atoms())
    bad_input("|At| = " + std::to_string(k.atoms.size()) + " exceeds the cap of " + std::to_string(max_atoms()) +
              " (AWAREKIT_MAX_ATOMS)");
  for (const auto& a : k.atoms)
    if (!valid_atom_name(a))
      bad_input("invalid atom name '" + a + "'");
  k.agents = string_list(field(j, "agents"), "agents");
  if (k.agents.empty())
    bad_input("the agent set must be nonempty");
  k.worlds = string_list(field(j, "worlds"), "worlds");
  if (std::set<std::string>(k.worlds.begin(), k.worlds.end()).size() != k.worlds.size())
    bad_input("duplicate world ids");
  const int n = k.world_count();
  k.relation.assign(k.agent_count(), std::vector<WorldSet>(n, WorldSet(n)));
  k.awareness.assign(k.agent_count(), std::vector<AtomMask>(n, 0));
  k.valuation.assign(k.atom_count(), WorldSet(n));
  const json& rel = field(j, "relations");
  if (!rel.is_object())
    bad_input("'relations' must map agents to pair lists");
  for (const auto& [agent, pairs] : rel.items()) {
    int i = k.agent_index(agent);
    if (!pairs.is_array())
      bad_input("relations[" + agent + "] must be a list of pairs");
    for (const auto& p : pairs) {
      auto pr = string_list(p, "relations[" + agent + "] entry");
      if (pr.size() != 2)
        bad_input("relations[" + agent + "] entries must be [from, to]");
      k.relation[i][k.world_index(pr[0])].set(k.world_index(pr[1]));
    }
  }
  if (j.contains("awareness")) {
    const json& aw = j.at("awareness");
    if (!aw.is_object())
      bad_input("'awareness' must map agents to world -> atom lists");
    for (const auto& [agent, per_world] : aw.items()) {
      int i = k.agent_index(agent);
      if (!per_world.is_object())
        bad_input("awareness[" + agent + "] must map worlds to atom lists");
      for (const auto& [world, list] : per_world.items()) {
        AtomMask m = 0;
        for (const auto& a : string_list(list, "awareness[" + agent + "][" + world + "]")) {
          auto idx = k.atom_index(a);
          if (!idx)
            throw ModelError(ErrorCode::UnknownAtom, "awareness of '" + a + "'");
          m |= AtomMask{1} << *idx;
        }
        k.awareness[i][k.world_index(world)] = m;
      }
    }
  }
  if (j.contains("valuation")) {
    const json& val = j.at("valuation");
    if (!val.is_object())
      bad_input("'valuation' must map atoms to world lists");
    for (const auto& [atom, worlds] : val.items()) {
      auto a = k.atom_index(atom);
      auto ws = string_list(worlds, "valuation[" + atom + "]");
      if (!a) {
        k.stray_valuation.push_back(atom);
        continue;
      }
      for (const auto& w : ws)
        k.valuation[*a].set(k.world_index(w));
    }
  }
  return k;
}

} // namespace detail

/// Parses a model document. The kind is taken from "kind" when present,
/// otherwise from the fields: "worlds" (FH), "lambda_star" (implicit),
/// "lambda" (complemented), else plain HMS.
inline AnyModel model_from_json(const json& j) {
  try {
    std::string kind;
    if (j.contains("kind") && j.at("kind").is_string())
      kind = j.at("kind").get<std::string>();
    else if (j.contains("worlds"))
      kind = "fh";
    else if (j.contains("lambda_star"))
      kind = "implicit-hms";
    else if (j.contains("lambda"))
      kind = "complemented-hms";
    else
      kind = "hms";
    if (kind == "fh")
      return detail::read_fh(j);
    Lattice l = detail::read_lattice(j);
    if (kind == "implicit-hms") {
      ImplicitHMSModel im{l, {}, {}};
      im.lambda_star = detail::read_agent_correspondences(im.frame, detail::field(j, "lambda_star"), "lambda_star");
      im.alpha.assign(l.agent_count(), std::vector<AtomMask>(l.state_count(), 0));
      const json& alpha = detail::field(j, "alpha");
      if (!alpha.is_object())
        detail::bad_input("'alpha' must map agents to state -> space key");
      for (const auto& [agent, per_state] : alpha.items()) {
        int i = l.agent_index(agent);
        if (!per_state.is_object())
          detail::bad_input("alpha[" + agent + "] must map states to space keys");
        for (const auto& [state, key] : per_state.items()) {
          if (!key.is_string())
            detail::bad_input("alpha[" + agent + "][" + state + "] must be a space key");
          im.alpha[i][im.frame.state_ref(state)] = im.frame.parse_space_key(key.get<std::string>());
        }
      }
      return im;
    }
    HMSModel m{l, {}};
    m.pi = detail::read_agent_correspondences(m.frame, detail::field(j, "pi"), "pi");
    if (kind == "complemented-hms") {
      ComplementedHMSModel c{std::move(m), {}};
      c.lambda = detail::read_agent_correspondences(c.lattice(), detail::field(j, "lambda"), "lambda");
      return c;
    }
    if (kind != "hms")
      detail::bad_input("unknown model kind '" + kind + "'");
    return m;
  } catch (const json::exception& e) {
    throw ModelError(ErrorCode::InvalidInput, std::string("malformed model document: ") + e.what());
  }
}

inline AnyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ModelError(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ModelError(ErrorCode::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
  return model_from_json(j);
}

// ---------------------------------------------------------------------------
// Writing.

namespace detail {

inline json lattice_json(const Lattice& l) {
  json j;
  j["atoms"] = l.atoms();
  j["agents"] = l.agents();
  json spaces = json::object();
  for (AtomMask m = 0; m < l.space_count(); ++m)
    spaces[l.space_key(m)] = l.ids_of(m);
  j["spaces"] = spaces;
  json proj = json::object();
  for (AtomMask phi = 0; phi < l.space_count(); ++phi)
    for (int a = 0; a < l.atom_count(); ++a) {
      if (!(phi & (AtomMask{1} << a)))
        continue;
      AtomMask psi = phi & ~(AtomMask{1} << a);
      json map = json::object();
      const auto& cover = l.covering_map(phi, a);
      for (int s = 0; s < l.size_of(phi); ++s)
        if (s < static_cast<int>(cover.size()) && cover[s] >= 0)
          map[l.ids_of(phi)[s]] = l.ids_of(psi)[cover[s]];
      proj[l.space_key(phi) + "->" + l.space_key(psi)] = map;
    }
  j["projections"] = proj;
  json val = json::object();
  for (int a = 0; a < l.atom_count(); ++a) {
    const Event& v = l.valuation(a);
    json base = json::array();
    for (auto g = v.base.find_first(); g != StateSet::npos; g = v.base.find_next(g))
      base.push_back(l.id_of(static_cast<int>(g)));
    val[l.atoms()[a]] = {{"base_space", l.space_key(v.space)}, {"base", base}};
  }
  j["valuation"] = val;
  return j;
}

inline json correspondences_json(const Lattice& l, const std::vector<Correspondence>& cs) {
  json out = json::object();
  for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
    json per = json::object();
    for (int g = 0; g < l.state_count(); ++g) {
      json cell = json::array();
      for (auto t = cs[i][g].find_first(); t != StateSet::npos; t = cs[i][g].find_next(t))
        cell.push_back(l.state_name(static_cast<int>(t)));
      per[l.state_name(g)] = cell;
    }
    out[l.agents()[i]] = per;
  }
  return out;
}

} // namespace detail

inline json to_json(const FHModel& k) {
  json j;
  j["kind"] = "fh";
  j["atoms"] = k.atoms;
  j["agents"] = k.agents;
  j["worlds"] = k.worlds;
  json rel = json::object(), aw = json::object();
  for (int i = 0; i < k.agent_count(); ++i) {
    json pairs = json::array();
    json per = json::object();
    for (int w = 0; w < k.world_count(); ++w) {
      for (auto t = k.relation[i][w].find_first(); t != WorldSet::npos; t = k.relation[i][w].find_next(t))
        pairs.push_back({k.worlds[w], k.worlds[t]});
      auto names = k.names_of(k.awareness[i][w]);
      per[k.worlds[w]] = std::vector<std::string>(names.begin(), names.end());
    }
    rel[k.agents[i]] = pairs;
    aw[k.agents[i]] = per;
  }
  j["relations"] = rel;
  j["awareness"] = aw;
  json val = json::object();
  for (int a = 0; a < k.atom_count(); ++a) {
    json ws = json::array();
    for (int w = 0; w < k.world_count(); ++w)
      if (k.valuation[a].test(w))
        ws.push_back(k.worlds[w]);
    val[k.atoms[a]] = ws;
  }
  j["valuation"] = val;
  return j;
}

inline json to_json(const HMSModel& m) {
  json j = detail::lattice_json(m.frame);
  j["kind"] = "hms";
  j["pi"] = detail::correspondences_json(m.frame, m.pi);
  return j;
}

inline json to_json(const ComplementedHMSModel& c) {
  json j = to_json(c.base);
  j["kind"] = "complemented-hms";
  j["lambda"] = detail::correspondences_json(c.lattice(), c.lambda);
  return j;
}

inline json to_json(const ImplicitHMSModel& im) {
  const Lattice& l = im.frame;
  json j = detail::lattice_json(l);
  j["kind"] = "implicit-hms";
  j["lambda_star"] = detail::correspondences_json(l, im.lambda_star);
  json alpha = json::object();
  for (int i = 0; i < l.agent_count(); ++i) {
    json per = json::object();
    for (int g = 0; g < l.state_count(); ++g)
      per[l.state_name(g)] = l.space_key(im.alpha[i][g]);
    alpha[l.agents()[i]] = per;
  }
  j["alpha"] = alpha;
  return j;
}

inline json to_json(const AnyModel& m) {
  return std::visit([](const auto& x) { return to_json(x); }, m);
}

inline void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw ModelError(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Reports.

inline json to_json(const Report& r) {
  json v = json::array();
  for (const auto& x : r.violations)
    v.push_back({{"law", x.law}, {"witness", x.witness}});
  return {{"ok", r.ok()}, {"checks", r.checks}, {"violations", v}, {"notes", r.notes}};
}

inline Report report_from_json(const json& j) {
  Report r;
  try {
    r.checks = j.at("checks").get<std::size_t>();
    for (const auto& v : j.at("violations"))
      r.add(v.at("law").get<std::string>(), v.at("witness").get<std::string>());
    for (const auto& n : j.at("notes"))
      r.note(n.get<std::string>());
  } catch (const json::exception& e) {
    throw ModelError(ErrorCode::InvalidInput, std::string("malformed report: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Category dumps and DOT.

/// One FH file per sublanguage ("K_<key>.json", "K_.json" for the empty
/// language) and "morphisms.json" listing every morphism as a world map.
inline void dump_category(const FHCategory& c, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  json manifest = json::array();
  for (AtomMask phi = 0; phi < static_cast<AtomMask>(c.models.size()); ++phi)
    save_json(to_json(c.models[phi]), (fs::path(dir) / ("K_" + c.key(phi) + ".json")).string());
  for (const auto& [pair, map] : c.morphisms) {
    json m = json::object();
    for (int w = 0; w < static_cast<int>(map.size()); ++w)
      m[c.models[pair.first].worlds[w]] = c.models[pair.second].worlds[map[w]];
    manifest.push_back({{"from", c.key(pair.first)}, {"to", c.key(pair.second)}, {"map", m}});
  }
  save_json(manifest, (fs::path(dir) / "morphisms.json").string());
}

/// The lattice of spaces as a DOT digraph: one cluster per space, covering projections as edges.
inline std::string lattice_dot(const Lattice& l) {
  std::ostringstream out;
  auto node = [&](int g) { return "\"" + l.state_name(g) + "\""; };
  out << "digraph lattice {\n  rankdir=TB;\n";
  for (AtomMask m = l.space_count(); m-- > 0;) {
    out << "  subgraph \"cluster_" << l.space_key(m) << "\" {\n    label=\"S{" << l.space_key(m) << "}\";\n";
    for (int g = l.begin_of(m); g < l.end_of(m); ++g)
      out << "    " << node(g) << " [label=\"" << l.id_of(g) << "\"];\n";
    out << "  }\n";
  }
  for (int g = 0; g < l.state_count(); ++g) {
    AtomMask phi = l.space_of(g);
    for (int a = 0; a < l.atom_count(); ++a)
      if (phi & (AtomMask{1} << a)) {
        int p = l.project(g, phi & ~(AtomMask{1} << a));
        if (p >= 0)
          out << "  " << node(g) << " -> " << node(p) << ";\n";
      }
  }
  out << "}\n";
  return out.str();
}

} // namespace awarekit
