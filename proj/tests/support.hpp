#pragma once

#include "awarekit/awarekit.hpp"

#include <gtest/gtest.h>

#include <string>

namespace awarekit::test {

inline bool mentions(const Report& r, const std::string& law) {
  for (const auto& v : r.violations)
    if (v.law.find(law) != std::string::npos)
      return true;
  return false;
}

inline std::string witness_of(const Report& r, const std::string& law) {
  for (const auto& v : r.violations)
    if (v.law.find(law) != std::string::npos)
      return v.witness;
  return {};
}

inline ::testing::AssertionResult passes(const Report& r) {
  if (r.ok())
    return ::testing::AssertionSuccess();
  auto out = ::testing::AssertionFailure();
  int shown = 0;
  for (const auto& v : r.violations) {
    out << v.law << " [" << v.witness << "]\n";
    if (++shown == 10)
      break;
  }
  return out;
}

inline StateSet states(const Lattice& l, std::initializer_list<const char*> refs) {
  StateSet s = l.empty_set();
  for (const char* ref : refs)
    s.set(l.state_ref(ref));
  return s;
}

inline Event event(const Lattice& l, const char* space, std::initializer_list<const char*> ids) {
  AtomMask m = l.parse_space_key(space);
  StateSet s = l.empty_set();
  for (const char* id : ids)
    s.set(*l.find_state(m, id));
  return make_event(l, m, s);
}

inline std::string data_path(const std::string& rel) { return std::string(AWAREKIT_DATA_DIR) + "/" + rel; }

} // namespace awarekit::test
