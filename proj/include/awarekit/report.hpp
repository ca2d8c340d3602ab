#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace awarekit {

/// One violated law together with the concrete objects that witness it.
struct Violation {
  std::string law;
  std::string witness;

  bool operator==(const Violation&) const = default;
};

/// Outcome of a validator or property suite. Passes iff there are no violations.
struct Report {
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  std::size_t checks = 0;

  bool ok() const noexcept { return violations.empty(); }

  void add(std::string law, std::string witness) {
    violations.push_back({std::move(law), std::move(witness)});
  }

  void note(std::string text) { notes.push_back(std::move(text)); }

  /// Counts a check and records a violation when `holds` is false.
  bool expect(bool holds, const std::string& law, const std::string& witness) {
    ++checks;
    if (!holds)
      add(law, witness);
    return holds;
  }

  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations)
      violations.push_back({prefix + v.law, v.witness});
    for (const auto& n : other.notes)
      notes.push_back(prefix + n);
    checks += other.checks;
  }

  bool has(const std::string& law) const {
    for (const auto& v : violations)
      if (v.law == law)
        return true;
    return false;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Report& r) {
  if (r.ok())
    os << "ok (" << r.checks << " checks)\n";
  for (const auto& v : r.violations)
    os << "violation: " << v.law << " [" << v.witness << "]\n";
  for (const auto& n : r.notes)
    os << "note: " << n << "\n";
  return os;
}

} // namespace awarekit
