#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nugrass/bundle.hpp"
#include "nugrass/reduced.hpp"
#include "nugrass/transitions.hpp"

namespace nugrass {

enum class Status { Pass, Fail, Skipped };

constexpr const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped-empty-overlap";
  }
  return "?";
}

struct ReportItem {
  std::string check;
  std::vector<std::string> charts;
  Status status = Status::Pass;
  std::string witness;  // counterexample for fail, reason for skipped
  std::size_t tested = 0;   // sampled checks only
  std::size_t skipped_points = 0;
};

struct SuiteReport {
  std::string suite;
  GrassSpec space;
  std::string nu_config;
  std::string policy;
  std::vector<ReportItem> items;

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [s](const ReportItem& i) { return i.status == s; }));
  }
  std::size_t count(const std::string& check, Status s) const {
    return static_cast<std::size_t>(std::count_if(
        items.begin(), items.end(), [&](const ReportItem& i) { return i.check == check && i.status == s; }));
  }
  bool passed() const { return count(Status::Fail) == 0; }
};

/// Which ordered triples a suite visits.
struct TriplePolicy {
  enum class Kind { All, StandardOnly, Sample };
  Kind kind = Kind::All;
  std::size_t sample = 0;

  static TriplePolicy parse(const std::string& text) {
    if (text == "all") return {Kind::All, 0};
    if (text == "standard-only") return {Kind::StandardOnly, 0};
    if (text.rfind("sample:", 0) == 0) {
      const std::string n = text.substr(7);
      if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return c >= '0' && c <= '9'; }))
        fail(ErrorCode::ParseError, "bad triple policy '" + text + "'");
      return {Kind::Sample, static_cast<std::size_t>(std::stoul(n))};
    }
    fail(ErrorCode::ParseError, "bad triple policy '" + text + "'");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::All: return "all";
      case Kind::StandardOnly: return "standard-only";
      case Kind::Sample: return "sample:" + std::to_string(sample);
    }
    return "?";
  }
};

namespace detail {

inline std::vector<std::string> names(const Atlas& atlas, std::initializer_list<std::size_t> idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(atlas.charts()[i].to_string());
  return out;
}

/// Positions visited for identities and pairs: every chart unless standard-only.
inline std::vector<std::size_t> chart_positions(const Atlas& atlas, const TriplePolicy& policy) {
  if (policy.kind == TriplePolicy::Kind::StandardOnly) return atlas.standard_positions();
  std::vector<std::size_t> all(atlas.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

struct Triple {
  std::size_t a, b, c;
  friend bool operator<(const Triple& x, const Triple& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  }
};

/// Ordered triples of distinct charts; sample:N keeps every standard triple
/// plus N seeded mixed ones.
inline std::vector<Triple> triples(const Atlas& atlas, const TriplePolicy& policy, std::uint64_t seed) {
  const GrassSpec& s = atlas.space();
  std::vector<Triple> standard, mixed;
  const std::size_t n = atlas.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        const bool all_std = atlas.charts()[a].is_standard(s) && atlas.charts()[b].is_standard(s) &&
                             atlas.charts()[c].is_standard(s);
        (all_std ? standard : mixed).push_back({a, b, c});
      }
  switch (policy.kind) {
    case TriplePolicy::Kind::StandardOnly: return standard;
    case TriplePolicy::Kind::All: {
      std::vector<Triple> out = standard;
      out.insert(out.end(), mixed.begin(), mixed.end());
      std::sort(out.begin(), out.end());
      return out;
    }
    case TriplePolicy::Kind::Sample: {
      std::mt19937_64 rng(seed);
      const std::size_t take = std::min(policy.sample, mixed.size());
      for (std::size_t i = 0; i < take; ++i) std::swap(mixed[i], mixed[i + rng() % (mixed.size() - i)]);
      std::vector<Triple> out = standard;
      out.insert(out.end(), mixed.begin(), mixed.begin() + static_cast<std::ptrdiff_t>(take));
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return {};
}

inline bool empty_overlap(const Error& e) {
  return e.code() == ErrorCode::EmptyOverlap || e.code() == ErrorCode::NonInvertibleDenominator;
}

/// Runs one check; empty overlaps become skipped items and any other
/// engine error is recorded as a failure with its message.
inline ReportItem run_item(std::string check, std::vector<std::string> charts,
                           const std::function<std::optional<std::string>()>& body) {
  ReportItem item{std::move(check), std::move(charts), Status::Pass, {}, 0, 0};
  try {
    if (auto defect = body()) {
      item.status = Status::Fail;
      item.witness = *defect;
    }
  } catch (const Error& e) {
    item.status = empty_overlap(e) ? Status::Skipped : Status::Fail;
    item.witness = e.what();
  }
  return item;
}

inline std::string mismatch_text(const Mismatch& m) {
  return m.gen.name() + ": expected " + m.expected + ", got " + m.actual;
}

inline const TransitionMap& need(TransitionCache& cache, std::size_t a, std::size_t b) {
  const TransitionMap* t = cache.get(a, b);
  if (t == nullptr)
    fail(ErrorCode::EmptyOverlap, cache.atlas().charts()[a].to_string() + " and " +
                                      cache.atlas().charts()[b].to_string() + " do not overlap generically");
  return *t;
}

}  // namespace detail

/// Identity, pair and triple conditions for the transition maps.
inline SuiteReport run_cocycle_suite(const Atlas& atlas, const TriplePolicy& policy, std::uint64_t seed) {
  using detail::need;
  const GrassSpec& s = atlas.space();
  SuiteReport rep{"cocycle", s, atlas.nu_summary(), policy.to_string(), {}};
  TransitionCache cache(atlas);
  const auto charts = detail::chart_positions(atlas, policy);

  for (auto a : charts)
    rep.items.push_back(detail::run_item("cocycle.identity", detail::names(atlas, {a}), [&]() -> std::optional<std::string> {
      const TransitionMap& g = need(cache, a, a);
      if (auto m = identity_defect(s, g)) return detail::mismatch_text(*m);
      return std::nullopt;
    }));

  for (auto a : charts)
    for (auto b : charts) {
      if (a == b) continue;
      rep.items.push_back(detail::run_item("cocycle.pair", detail::names(atlas, {a, b}), [&]() -> std::optional<std::string> {
        const TransitionMap& ab = need(cache, a, b);
        const TransitionMap& ba = need(cache, b, a);
        if (auto m = identity_defect(s, compose(ba, ab))) return detail::mismatch_text(*m);
        return std::nullopt;
      }));
    }

  for (const auto& t : detail::triples(atlas, policy, seed))
    rep.items.push_back(
        detail::run_item("cocycle.triple", detail::names(atlas, {t.a, t.b, t.c}), [&]() -> std::optional<std::string> {
          const TransitionMap& ab = need(cache, t.a, t.b);
          const TransitionMap& bc = need(cache, t.b, t.c);
          const TransitionMap& ca = need(cache, t.c, t.a);
          if (auto m = identity_defect(s, compose(ca, compose(bc, ab)))) return detail::mismatch_text(*m);
          return std::nullopt;
        }));
  return rep;
}

/// eta and h pair/triple conditions.
inline SuiteReport run_bundle_suite(const Atlas& atlas, const TriplePolicy& policy, std::uint64_t seed) {
  using detail::need;
  SuiteReport rep{"bundle", atlas.space(), atlas.nu_summary(), policy.to_string(), {}};
  TransitionCache cache(atlas);
  const auto charts = detail::chart_positions(atlas, policy);
  const auto& cs = atlas.charts();

  for (auto a : charts)
    for (auto b : charts) {
      if (a == b) continue;
      const auto who = detail::names(atlas, {a, b});
      rep.items.push_back(detail::run_item("bundle.eta_pair", who, [&] {
        need(cache, b, a);
        return eta_pair_defect(atlas, need(cache, a, b));
      }));
      rep.items.push_back(detail::run_item("bundle.h_pair", who, [&] {
        need(cache, b, a);
        return h_pair_defect(atlas, need(cache, a, b));
      }));
    }

  for (const auto& t : detail::triples(atlas, policy, seed)) {
    const auto who = detail::names(atlas, {t.a, t.b, t.c});
    rep.items.push_back(detail::run_item("bundle.eta_triple", who, [&] {
      need(cache, t.b, t.c);
      need(cache, t.a, t.c);
      return eta_triple_defect(atlas, need(cache, t.a, t.b), cs[t.c]);
    }));
    rep.items.push_back(detail::run_item("bundle.h_triple", who, [&] {
      need(cache, t.a, t.b);
      need(cache, t.a, t.c);
      return h_triple_defect(atlas, cs[t.a], need(cache, t.c, t.b));
    }));
  }
  return rep;
}

/// Body-level checks: g~ against the classical chart change, chi o psi = id,
/// the psi/theta diagram and the Lambda image at seeded points.
inline SuiteReport run_reduced_suite(const Atlas& atlas, std::size_t samples, std::uint64_t seed) {
  using detail::need;
  const GrassSpec& s = atlas.space();
  SuiteReport rep{"reduced", s, atlas.nu_summary(), "samples:" + std::to_string(samples), {}};
  TransitionCache cache(atlas);
  const auto& cs = atlas.charts();
  const auto standard = atlas.standard_positions();

  for (auto a : standard)
    for (auto b : standard) {
      if (a == b) continue;
      rep.items.push_back(detail::run_item("reduced.gtilde_classical", detail::names(atlas, {a, b}),
                                           [&] { return gtilde_defect(s, need(cache, a, b)); }));
    }

  for (std::size_t a = 0; a < atlas.size(); ++a)
    rep.items.push_back(detail::run_item("reduced.chi_psi", detail::names(atlas, {a}),
                                         [&] { return chi_psi_defect(atlas, cs[a]); }));

  auto sampled = [&](std::string check, std::vector<std::string> who, const std::function<SampleReport()>& run) {
    ReportItem item{std::move(check), std::move(who), Status::Pass, {}, 0, 0};
    try {
      const SampleReport r = run();
      item.tested = r.tested;
      item.skipped_points = r.skipped;
      if (r.tested == 0) {
        item.status = Status::Skipped;
        item.witness = "no testable points";
      } else if (!r.ok()) {
        item.status = Status::Fail;
        item.witness = std::to_string(r.tested - r.passed) + " of " + std::to_string(r.tested) +
                       " points fail; first: " + r.witness.value_or("");
      }
    } catch (const Error& e) {
      item.status = detail::empty_overlap(e) ? Status::Skipped : Status::Fail;
      item.witness = e.what();
    }
    rep.items.push_back(std::move(item));
  };

  for (std::size_t a = 0; a < atlas.size(); ++a)
    for (std::size_t b = 0; b < atlas.size(); ++b) {
      if (a == b) continue;
      sampled("reduced.diagram", detail::names(atlas, {a, b}), [&] {
        return check_diagram(atlas, need(cache, a, b), BigChartIndex::associated(cs[a], s.m),
                             BigChartIndex::associated(cs[b], s.m), samples, mix_seed(seed, a, b));
      });
    }

  for (std::size_t a = 0; a < atlas.size(); ++a)
    sampled("reduced.lambda_image", detail::names(atlas, {a}), [&] {
      return check_lambda_image(atlas, cs[a], BigChartIndex::associated(cs[a], s.m), samples,
                                mix_seed(seed, a, atlas.size()));
    });
  return rep;
}

}  // namespace nugrass
