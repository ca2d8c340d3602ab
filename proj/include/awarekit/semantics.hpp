#pragma once

// Three-valued satisfaction of formulas in complemented and
// implicit-knowledge-based HMS models, and definedness-relative validity in
// those models and in categories of FH models.

#include "awarekit/fh.hpp"
#include "awarekit/implicit.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace awarekit {

enum class TruthValue { True, False, Undefined };

inline std::string_view to_string(TruthValue v) {
  switch (v) {
  case TruthValue::True: return "True";
  case TruthValue::False: return "False";
  case TruthValue::Undefined: return "Undefined";
  }
  return "?";
}

/// Extensions [f] of formulas, memoized per subformula. Holds references to
/// the model it was built from; the model must outlive the evaluator.
class HmsSemantics {
public:
  explicit HmsSemantics(const ComplementedHMSModel& c) : c_(&c) {}

  /// Implicit-knowledge-based variant: a_i reads alpha, k_i reads the derived Pi*.
  explicit HmsSemantics(const ImplicitHMSModel& im)
      : derived_(std::make_shared<const ComplementedHMSModel>(derive_pi_star(im))), c_(derived_.get()), im_(&im) {}

  const Lattice& lattice() const noexcept { return c_->lattice(); }

  /// [f] as an event. Throws UnknownAtom / UnknownAgent.
  const Event& extension(const Formula& f) {
    if (auto it = memo_.find(f); it != memo_.end())
      return it->second;
    Event e = compute(f);
    return memo_.emplace(f, std::move(e)).first->second;
  }

  /// Up-closure of [f].
  const StateSet& truth_set(const Formula& f) {
    if (auto it = up_.find(f); it != up_.end())
      return it->second;
    StateSet s = up_closure(lattice(), extension(f));
    return up_.emplace(f, std::move(s)).first->second;
  }

  TruthValue satisfies(int g, const Formula& f) {
    if (g < 0 || g >= lattice().state_count())
      throw ModelError(ErrorCode::UnknownState, "state index " + std::to_string(g));
    if (truth_set(f).test(g))
      return TruthValue::True;
    if (truth_set(Formula::negation(f)).test(g))
      return TruthValue::False;
    return TruthValue::Undefined;
  }

  TruthValue satisfies(std::string_view state, const Formula& f) { return satisfies(lattice().state_ref(state), f); }

private:
  Event compute(const Formula& f) {
    const Lattice& l = lattice();
    switch (f.op()) {
    case Op::Top: return omega_event(l);
    case Op::Atom: {
      auto a = l.atom_index(f.name());
      if (!a)
        throw ModelError(ErrorCode::UnknownAtom, f.name());
      return l.valuation(*a);
    }
    case Op::Not: return event_not(l, extension(f.child()));
    case Op::And: {
      Event a = extension(f.left());
      return event_and(l, a, extension(f.right()));
    }
    case Op::Implicit: return l_op(*c_, l.agent_index(f.agent()), extension(f.child()));
    case Op::Know: return k_op(*c_, l.agent_index(f.agent()), extension(f.child()));
    case Op::Aware: {
      int i = l.agent_index(f.agent());
      if (im_)
        return a_star_op(*im_, i, extension(f.child()));
      return a_op(*c_, i, extension(f.child()));
    }
    }
    return omega_event(l);
  }

  std::shared_ptr<const ComplementedHMSModel> derived_;
  const ComplementedHMSModel* c_ = nullptr;
  const ImplicitHMSModel* im_ = nullptr;
  std::unordered_map<Formula, Event, FormulaHash> memo_;
  std::unordered_map<Formula, StateSet, FormulaHash> up_;
};

inline TruthValue satisfies(const ComplementedHMSModel& c, int g, const Formula& f) {
  HmsSemantics s(c);
  return s.satisfies(g, f);
}

inline TruthValue satisfies(const ImplicitHMSModel& im, int g, const Formula& f) {
  HmsSemantics s(im);
  return s.satisfies(g, f);
}

/// The intersection over p in At(f) of v(p)-up united with (not v(p))-up.
inline StateSet definedness_set(const Lattice& l, const Formula& f) {
  StateSet out = ~l.empty_set();
  for (const auto& name : atoms(f)) {
    auto a = l.atom_index(name);
    if (!a)
      throw ModelError(ErrorCode::UnknownAtom, name);
    const Event& v = l.valuation(*a);
    out &= up_closure(l, v) | up_closure(l, event_not(l, v));
  }
  return out;
}

/// Cross-check: f has a truth value at exactly the states where it is defined.
inline Report definedness_report(HmsSemantics& s, const Formula& f) {
  Report r;
  const Lattice& l = s.lattice();
  StateSet defined = definedness_set(l, f);
  for (int g = 0; g < l.state_count(); ++g) {
    bool has_value = s.satisfies(g, f) != TruthValue::Undefined;
    r.expect(has_value == defined.test(g), "definedness", render(f) + " at " + l.state_name(g));
  }
  return r;
}

struct Validity {
  bool valid = true;
  std::optional<std::string> witness; // a defined state (or world) where the formula is false
};

inline Validity valid_in(HmsSemantics& s, const Formula& f) {
  const Lattice& l = s.lattice();
  // Witnesses are taken from the most expressive spaces first.
  for (AtomMask m = l.space_count(); m-- > 0;)
    for (int g = l.begin_of(m); g < l.end_of(m); ++g)
      if (s.satisfies(g, f) == TruthValue::False)
        return {false, l.state_name(g)};
  return {};
}

inline Validity valid_in_model(const ComplementedHMSModel& c, const Formula& f) {
  HmsSemantics s(c);
  return valid_in(s, f);
}

inline Validity valid_in_model(const ImplicitHMSModel& im, const Formula& f) {
  HmsSemantics s(im);
  return valid_in(s, f);
}

/// Valid in every sublanguage model of the category in which f is defined.
inline Validity valid_in_category(const FHCategory& c, const Formula& f) {
  AtomMask need = 0;
  for (const auto& name : atoms(f)) {
    auto it = std::lower_bound(c.atoms.begin(), c.atoms.end(), name);
    if (it == c.atoms.end() || *it != name)
      throw ModelError(ErrorCode::UnknownAtom, name);
    need |= AtomMask{1} << (it - c.atoms.begin());
  }
  for (AtomMask psi = 0; psi < static_cast<AtomMask>(c.models.size()); ++psi) {
    if (!below(need, psi))
      continue;
    FhEvaluator ev(c.models[psi]);
    const WorldSet& ext = ev.extension(f);
    if (!ext.all()) {
      auto w = (~ext).find_first();
      return {false, c.key(psi) + ":" + c.models[psi].worlds[w]};
    }
  }
  return {};
}

} // namespace awarekit
