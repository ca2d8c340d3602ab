#pragma once

// The language over atoms with implicit knowledge (l_i), awareness (a_i) and
// explicit knowledge (k_i). Formulas are immutable shared trees; equality and
// hashing are structural.

#include "awarekit/error.hpp"

#include <cctype>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace awarekit {

enum class Op : unsigned char { Top, Atom, Not, And, Implicit, Aware, Know };

inline bool is_modal(Op op) { return op == Op::Implicit || op == Op::Aware || op == Op::Know; }

class Formula {
  struct Node {
    Op op;
    std::string name; // atom name or agent id
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t hash;
    int depth;
  };
  using NodePtr = std::shared_ptr<const Node>;

public:
  Formula() : Formula(top()) {}

  static Formula top() {
    static const NodePtr t = make(Op::Top, {}, nullptr, nullptr);
    return Formula(t);
  }
  static Formula atom(std::string name) { return Formula(make(Op::Atom, std::move(name), nullptr, nullptr)); }
  static Formula negation(const Formula& f) { return Formula(make(Op::Not, {}, f.node_, nullptr)); }
  static Formula conj(const Formula& l, const Formula& r) { return Formula(make(Op::And, {}, l.node_, r.node_)); }
  static Formula modal(Op op, std::string agent, const Formula& f) {
    return Formula(make(op, std::move(agent), f.node_, nullptr));
  }
  static Formula implicit(std::string agent, const Formula& f) { return modal(Op::Implicit, std::move(agent), f); }
  static Formula aware(std::string agent, const Formula& f) { return modal(Op::Aware, std::move(agent), f); }
  static Formula knows(std::string agent, const Formula& f) { return modal(Op::Know, std::move(agent), f); }

  // Derived connectives, expressed through negation and conjunction.
  static Formula disj(const Formula& l, const Formula& r) { return negation(conj(negation(l), negation(r))); }
  static Formula implies(const Formula& l, const Formula& r) { return negation(conj(l, negation(r))); }
  static Formula iff(const Formula& l, const Formula& r) { return conj(implies(l, r), implies(r, l)); }

  Op op() const noexcept { return node_->op; }
  /// Atom name for atoms, agent id for modalities, empty otherwise.
  const std::string& name() const noexcept { return node_->name; }
  const std::string& agent() const noexcept { return node_->name; }
  Formula child() const { return Formula(node_->lhs); }
  Formula left() const { return Formula(node_->lhs); }
  Formula right() const { return Formula(node_->rhs); }

  std::size_t hash() const noexcept { return node_->hash; }
  int modal_depth() const noexcept { return node_->depth; }
  const void* identity() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) { return equal(a.node_.get(), b.node_.get()); }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
  explicit Formula(NodePtr n) : node_(std::move(n)) {}

  static NodePtr make(Op op, std::string name, NodePtr lhs, NodePtr rhs) {
    std::size_t h = std::hash<int>{}(static_cast<int>(op)) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<std::string>{}(name));
    int depth = 0;
    if (lhs) {
      mix(lhs->hash);
      depth = lhs->depth;
    }
    if (rhs) {
      mix(rhs->hash);
      depth = std::max(depth, rhs->depth);
    }
    if (is_modal(op))
      ++depth;
    return std::make_shared<const Node>(Node{op, std::move(name), std::move(lhs), std::move(rhs), h, depth});
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b)
      return true;
    if (!a || !b || a->hash != b->hash || a->op != b->op || a->name != b->name)
      return false;
    return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
  }

  NodePtr node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// ---------------------------------------------------------------------------

inline void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
  case Op::Top: return;
  case Op::Atom: out.insert(f.name()); return;
  case Op::And:
    collect_atoms(f.left(), out);
    collect_atoms(f.right(), out);
    return;
  default: collect_atoms(f.child(), out); return;
  }
}

/// At(f): the atom names occurring in f.
inline std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

inline void collect_agents(const Formula& f, std::set<std::string>& out) {
  switch (f.op()) {
  case Op::Top:
  case Op::Atom: return;
  case Op::And:
    collect_agents(f.left(), out);
    collect_agents(f.right(), out);
    return;
  case Op::Not: collect_agents(f.child(), out); return;
  default:
    out.insert(f.agent());
    collect_agents(f.child(), out);
    return;
  }
}

inline std::set<std::string> agents_of(const Formula& f) {
  std::set<std::string> out;
  collect_agents(f, out);
  return out;
}

inline void subformulas(const Formula& f, std::vector<Formula>& out) {
  out.push_back(f);
  switch (f.op()) {
  case Op::Top:
  case Op::Atom: return;
  case Op::And:
    subformulas(f.left(), out);
    subformulas(f.right(), out);
    return;
  default: subformulas(f.child(), out); return;
  }
}

inline std::size_t formula_size(const Formula& f) {
  switch (f.op()) {
  case Op::Top:
  case Op::Atom: return 1;
  case Op::And: return 1 + formula_size(f.left()) + formula_size(f.right());
  default: return 1 + formula_size(f.child());
  }
}

inline char modal_letter(Op op) {
  switch (op) {
  case Op::Implicit: return 'l';
  case Op::Aware: return 'a';
  case Op::Know: return 'k';
  default: return '?';
  }
}

inline void render_to(const Formula& f, std::string& out) {
  switch (f.op()) {
  case Op::Top: out += 'T'; return;
  case Op::Atom: out += f.name(); return;
  case Op::Not:
    out += "(~ ";
    render_to(f.child(), out);
    out += ')';
    return;
  case Op::And:
    out += '(';
    render_to(f.left(), out);
    out += " & ";
    render_to(f.right(), out);
    out += ')';
    return;
  default:
    out += '(';
    out += modal_letter(f.op());
    out += '_';
    out += f.agent();
    out += ' ';
    render_to(f.child(), out);
    out += ')';
    return;
  }
}

/// Canonical fully parenthesized text over the primitive connectives.
inline std::string render(const Formula& f) {
  std::string out;
  render_to(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser.
//
//   iff  := imp ('<->' imp)*          left associative
//   imp  := or ('->' imp)?            right associative
//   or   := and ('|' and)*
//   and  := un ('&' un)*
//   un   := '~' un | MODAL un | prim   MODAL is l_<agent>, a_<agent>, k_<agent>
//   prim := 'T' | ATOM | '(' iff ')'

inline bool is_identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

/// If `ident` has the shape of a modal token, returns its operator and agent.
inline std::optional<std::pair<Op, std::string>> modal_token(std::string_view ident) {
  if (ident.size() < 3 || ident[1] != '_')
    return std::nullopt;
  Op op;
  switch (ident[0]) {
  case 'l': op = Op::Implicit; break;
  case 'a': op = Op::Aware; break;
  case 'k': op = Op::Know; break;
  default: return std::nullopt;
  }
  return std::make_pair(op, std::string(ident.substr(2)));
}

/// True if `name` can be used as an atom name (not T, not shaped like a modality).
inline bool valid_atom_name(std::string_view name) {
  if (name.empty() || !is_identifier_start(name[0]) || name == "T")
    return false;
  for (char c : name)
    if (!is_identifier_char(c))
      return false;
  return !modal_token(name).has_value();
}

namespace detail {

class Parser {
public:
  Parser(std::string_view text, const std::set<std::string>* agents) : text_(text), agents_(agents) {}

  Formula parse() {
    skip_ws();
    if (pos_ >= text_.size())
      throw SyntaxError("empty formula", pos_);
    Formula f = parse_iff();
    skip_ws();
    if (pos_ < text_.size())
      throw SyntaxError("stray token '" + std::string(1, text_[pos_]) + "'", pos_);
    return f;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept("<->"))
      f = Formula::iff(f, parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (peek("->")) {
      accept("->");
      return Formula::implies(f, parse_imp());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|"))
      f = Formula::disj(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("&"))
      f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= text_.size())
      throw SyntaxError("unexpected end of input", pos_);
    if (accept("~"))
      return Formula::negation(parse_unary());
    if (text_[pos_] == '(') {
      std::size_t open = pos_;
      ++pos_;
      Formula f = parse_iff();
      if (!accept(")"))
        throw SyntaxError("unbalanced parenthesis opened at " + std::to_string(open), pos_);
      return f;
    }
    if (!is_identifier_start(text_[pos_]))
      throw SyntaxError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_identifier_char(text_[pos_]))
      ++pos_;
    std::string_view ident = text_.substr(start, pos_ - start);
    if (ident == "T")
      return Formula::top();
    if (auto m = modal_token(ident)) {
      if (agents_ && !agents_->count(m->second))
        throw SyntaxError("unknown agent '" + m->second + "'", start);
      return Formula::modal(m->first, m->second, parse_unary());
    }
    return Formula::atom(std::string(ident));
  }

  std::string_view text_;
  const std::set<std::string>* agents_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses `text`, rejecting modalities whose agent is not in `agents`.
inline Formula parse(std::string_view text, const std::set<std::string>& agents) {
  return detail::Parser(text, &agents).parse();
}

/// Parses `text` accepting any agent id.
inline Formula parse(std::string_view text) { return detail::Parser(text, nullptr).parse(); }

} // namespace awarekit
