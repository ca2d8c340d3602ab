#pragma once

// Property suites over generated models, and the mutation probe that runs
// them with one semantic fault switched on.

#include "awarekit/equivalence.hpp"
#include "awarekit/fixtures.hpp"
#include "awarekit/genmodels.hpp"
#include "awarekit/lpa.hpp"
#include "awarekit/mutation.hpp"
#include "awarekit/properties.hpp"
#include "awarekit/transforms.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace awarekit {

enum class Suite { Explicit, Implicit, Derivation, Category, Transforms, Lpa };

inline constexpr std::array<Suite, 6> all_suites{Suite::Explicit, Suite::Implicit,   Suite::Derivation,
                                                 Suite::Category, Suite::Transforms, Suite::Lpa};

inline std::string_view to_string(Suite s) {
  switch (s) {
  case Suite::Explicit: return "explicit";
  case Suite::Implicit: return "implicit";
  case Suite::Derivation: return "derivation";
  case Suite::Category: return "category";
  case Suite::Transforms: return "transforms";
  case Suite::Lpa: return "lpa";
  }
  return "?";
}

inline std::optional<Suite> parse_suite(std::string_view s) {
  for (Suite x : all_suites)
    if (to_string(x) == s)
      return x;
  return std::nullopt;
}

struct SuiteOptions {
  GenCaps caps{3, 5, 2};
  int trials = 100;
  std::uint64_t seed = 1;
  EnumOptions enumeration{};
  bool fixtures = true;   // also run the two fixtures where the suite applies
  bool stop_early = false; // return after the first failing trial
};

namespace detail {

/// Output validity is reported as a law rather than thrown; the
/// equivalence check only runs on a valid output.
template <class Source, class Transform, class Equiv>
void transform_and_compare(Report& r, const Source& src, Transform tf, Equiv eq, const std::string& tag) {
  FHModel k = tf(src, FhTransformOptions{false});
  Report v = validate_fh(k);
  r.merge(v, tag + "output.");
  if (v.ok())
    r.merge(eq(src, k), tag);
}

inline Report hms_to_fh(const ComplementedHMSModel& c, const EnumOptions& eo) {
  Report r;
  transform_and_compare(
      r, c, [](const auto& m, auto o) { return fh_transform(m, o); },
      [&](const auto& m, const FHModel& k) { return equivalence_hms_to_fh(m, k, eo); }, "hms-to-fh.");
  return r;
}

inline Report implicit_to_fh(const ImplicitHMSModel& im, const EnumOptions& eo) {
  Report r;
  transform_and_compare(
      r, im, [](const auto& m, auto o) { return fh_star_transform(m, o); },
      [&](const auto& m, const FHModel& k) { return equivalence_implicit_to_fh(m, k, eo); }, "implicit-to-fh-star.");
  return r;
}

inline Report transforms_trial(std::uint64_t seed, const GenCaps& caps, const EnumOptions& eo) {
  Report r;
  FHModel k = gen_fh(seed, caps);
  ComplementedHMSModel h = hms_transform(k);
  ImplicitHMSModel t = truncated_hms_transform(k);
  r.merge(equivalence_fh_to_hms(k, h, eo), "fh-to-hms.");
  r.merge(equivalence_fh_to_implicit(k, t, eo), "fh-to-truncated.");
  FHModel back = fh_star_transform(t);
  r.merge(fh_agreement(k, back, eo), "round-trip.");

  ComplementedHMSModel c = gen_hms(seed, caps);
  r.merge(hms_to_fh(c, eo));
  r.merge(implicit_to_fh(gen_implicit(seed, caps), eo));
  return r;
}

} // namespace detail

/// One generated model (or, for Lpa, one fuzz trial) through one suite.
inline Report run_suite_trial(Suite s, std::uint64_t seed, const GenCaps& caps, const EnumOptions& eo = {}) {
  switch (s) {
  case Suite::Explicit: return explicit_property_suite(gen_hms(seed, caps).base);
  case Suite::Implicit: return implicit_property_suite(gen_hms(seed, caps));
  case Suite::Derivation: return derivation_property_suite(gen_implicit(seed, caps));
  case Suite::Category: return category_equivalence_suite(build_category(gen_fh(seed, caps)), eo);
  case Suite::Transforms: return detail::transforms_trial(seed, caps, eo);
  case Suite::Lpa: {
    FuzzOptions fo;
    fo.trials = 1;
    fo.caps = caps;
    fo.depth = eo.depth;
    fo.seed = seed;
    return fuzz_soundness(fo);
  }
  }
  return {};
}

inline Report run_suite_fixtures(Suite s, const EnumOptions& eo = {}) {
  Report r;
  for (const auto& [name, c] : {std::pair{"fig1L", fig1L()}, std::pair{"fig1R", fig1R()}}) {
    const std::string tag = std::string(name) + ": ";
    switch (s) {
    case Suite::Explicit: r.merge(explicit_property_suite(c.base), tag); break;
    case Suite::Implicit: r.merge(implicit_property_suite(c), tag); break;
    case Suite::Category: r.merge(category_equivalence_suite(build_category(fh_transform(c)), eo), tag); break;
    case Suite::Transforms: r.merge(detail::hms_to_fh(c, eo), tag); break;
    default: break;
    }
  }
  return r;
}

/// A thrown ModelError is recorded as a violation under "exception".
inline Report run_suite(Suite s, const SuiteOptions& opts) {
  Report r;
  auto guarded = [&](const std::string& tag, auto&& body) {
    try {
      r.merge(body(), tag);
    } catch (const ModelError& e) {
      r.expect(false, "exception", tag + e.what());
    }
  };
  if (opts.fixtures)
    guarded("", [&] { return run_suite_fixtures(s, opts.enumeration); });
  for (int t = 0; t < opts.trials; ++t) {
    if (opts.stop_early && !r.ok())
      break;
    const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(t);
    guarded("seed " + std::to_string(seed) + ": ",
            [&] { return run_suite_trial(s, seed, opts.caps, opts.enumeration); });
  }
  return r;
}

struct ProbeResult {
  Mutation mutation = Mutation::None;
  std::vector<Suite> caught_by;
  std::string first_law;
  std::string first_witness;
  bool caught() const { return !caught_by.empty(); }
};

/// Runs every suite with `m` active and records which ones report a violation.
inline ProbeResult probe_mutation(Mutation m, SuiteOptions opts) {
  mutation::Scoped scope(m);
  ProbeResult out{m, {}, {}, {}};
  for (Suite s : all_suites) {
    Report r = run_suite(s, opts);
    if (r.ok())
      continue;
    out.caught_by.push_back(s);
    // Prefer a named law over a construction failure.
    for (const auto& v : r.violations) {
      const bool thrown = v.law.find("exception") != std::string::npos;
      if (!out.first_law.empty() && (thrown || out.first_law.find("exception") == std::string::npos))
        break;
      out.first_law = std::string(to_string(s)) + ": " + v.law;
      out.first_witness = v.witness;
      if (!thrown)
        break;
    }
  }
  return out;
}

} // namespace awarekit
