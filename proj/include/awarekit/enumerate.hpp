#pragma once

// Bounded enumeration of formulas by modal depth, used as the oracle for
// modal-equivalence checks.
//
// Level 0 is T and the atoms. Each level is closed once under negation, then
// under binary conjunction over a bounded pool, then under negation of those
// conjunctions; the next level adds l_i, a_i, k_i of every formula of the
// previous one for every agent. An optional signature merges formulas that
// are indistinguishable on the models being compared; since every
// constructor acts on signatures compositionally, merging loses no
// counterexample.

#include "awarekit/formula.hpp"

#include <boost/dynamic_bitset.hpp>

#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

namespace awarekit {

struct EnumOptions {
  int depth = 2;
  std::size_t cap = 3000;
  std::size_t pair_pool = 40; // conjunctions are formed among the first pair_pool formulas of a level
};

/// Appends a key to `out`; formulas with equal keys are treated as interchangeable.
using SignatureFn = std::function<void(const Formula&, std::string& out)>;

inline void append_bits(const boost::dynamic_bitset<>& bits, std::string& out) {
  for (std::size_t i = 0; i < bits.size(); ++i)
    out += bits.test(i) ? '1' : '0';
  out += '|';
}

class FormulaEnumerator {
public:
  FormulaEnumerator(std::vector<std::string> atoms, std::vector<std::string> agents, EnumOptions opts,
                    SignatureFn sig = {})
      : atoms_(std::move(atoms)), agents_(std::move(agents)), opts_(opts), sig_(std::move(sig)) {}

  std::vector<Formula> run() {
    std::vector<Formula> level;
    offer(Formula::top(), level);
    for (const auto& a : atoms_)
      offer(Formula::atom(a), level);
    close(level);
    for (int d = 1; d <= opts_.depth && !full(); ++d) {
      std::vector<Formula> next;
      for (const auto& f : level)
        for (const auto& ag : agents_)
          for (Op op : {Op::Implicit, Op::Aware, Op::Know})
            offer(Formula::modal(op, ag, f), next);
      close(next);
      level.insert(level.end(), next.begin(), next.end());
    }
    return out_;
  }

private:
  bool full() const { return out_.size() >= opts_.cap; }

  void offer(const Formula& f, std::vector<Formula>& level) {
    if (full())
      return;
    std::string key;
    if (sig_)
      sig_(f, key);
    else
      key = render(f);
    if (!seen_.insert(key).second)
      return;
    out_.push_back(f);
    level.push_back(f);
  }

  void close(std::vector<Formula>& level) {
    const std::size_t base = level.size();
    for (std::size_t i = 0; i < base; ++i)
      offer(Formula::negation(level[i]), level);
    const std::size_t pool = std::min(opts_.pair_pool, level.size());
    std::vector<Formula> conjs;
    for (std::size_t i = 0; i < pool; ++i)
      for (std::size_t j = i + 1; j < pool; ++j) {
        std::size_t before = level.size();
        offer(Formula::conj(level[i], level[j]), level);
        if (level.size() > before)
          conjs.push_back(level.back());
      }
    for (const auto& c : conjs)
      offer(Formula::negation(c), level);
  }

  std::vector<std::string> atoms_;
  std::vector<std::string> agents_;
  EnumOptions opts_;
  SignatureFn sig_;
  std::unordered_set<std::string> seen_;
  std::vector<Formula> out_;
};

inline std::vector<Formula> enumerate_formulas(std::vector<std::string> atoms, std::vector<std::string> agents,
                                               const EnumOptions& opts, SignatureFn sig = {}) {
  return FormulaEnumerator(std::move(atoms), std::move(agents), opts, std::move(sig)).run();
}

} // namespace awarekit
