// Acceptance checks: one pass/fail line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_app.hpp"
#include "nugrass/json_io.hpp"
#include "nugrass/verify.hpp"
#include "test_support.hpp"

using namespace nugrass;

namespace {

constexpr int kRandomCases = 1000;
constexpr std::size_t kSamples = 100;
constexpr std::uint64_t kSeed = 42;

const GrassSpec kSmall{1, 1, 2, 2};
const GrassSpec kG{1, 2, 3, 3};

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& note) {
    if (!cond) {
      ok = false;
      notes.push_back(note);
    }
  }
  void info(const std::string& note) { notes.push_back(note); }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.notes.push_back(std::string("uncaught error: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) o.require(false, "runtime over budget");
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2fs, budget %.0fs", secs, budget_s);
  std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " (" << timing << ")\n";
  for (const auto& n : o.notes) std::cout << "        " << n << "\n";
  std::cout.flush();
  if (!o.ok) ++failures;
}

std::string label_text(const Atlas& atlas, const char* chart) {
  const ChartLabel& label = atlas.label(parse_chart(chart));
  return render(label.symbolic) + "\ngenerators: " + label.generator_order_string() + "\n";
}

void summarize(Outcome& o, const SuiteReport& rep, const std::string& tag, std::size_t max_witnesses = 3) {
  std::ostringstream os;
  os << tag << ": " << rep.items.size() << " items, " << rep.count(Status::Pass) << " pass, "
     << rep.count(Status::Fail) << " fail, " << rep.count(Status::Skipped) << " skipped";
  o.info(os.str());
  std::size_t shown = 0;
  for (const auto& it : rep.items) {
    if (it.status != Status::Fail || shown++ >= max_witnesses) continue;
    std::string who;
    for (const auto& c : it.charts) who += (who.empty() ? "" : " ") + c;
    o.info("  " + it.check + " [" + who + "] " + it.witness);
  }
  o.require(rep.passed(), tag + " has failing items");
}

bool skips_are_overlaps(const SuiteReport& rep) {
  for (const auto& it : rep.items)
    if (it.status == Status::Skipped && it.witness.find("overlap") == std::string::npos &&
        it.witness.find("denominator") == std::string::npos)
      return false;
  return true;
}

/// cocycle.pair items for ordered pairs that involve a non-standard chart.
SuiteReport mixed_pairs(const Atlas& atlas) {
  SuiteReport rep{"cocycle", atlas.space(), atlas.nu_summary(), "mixed pairs", {}};
  TransitionCache cache(atlas);
  for (std::size_t a = 0; a < atlas.size(); ++a)
    for (std::size_t b = 0; b < atlas.size(); ++b) {
      if (a == b) continue;
      if (atlas.charts()[a].is_standard(atlas.space()) && atlas.charts()[b].is_standard(atlas.space())) continue;
      rep.items.push_back(detail::run_item("cocycle.pair", detail::names(atlas, {a, b}), [&]() -> std::optional<std::string> {
        const TransitionMap& ab = detail::need(cache, a, b);
        const TransitionMap& ba = detail::need(cache, b, a);
        if (auto m = identity_defect(atlas.space(), compose(ba, ab))) return detail::mismatch_text(*m);
        return std::nullopt;
      }));
    }
  return rep;
}

std::string run_cli_capture(std::vector<std::string> args, int& code) {
  std::vector<const char*> argv{"nugrass"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

}  // namespace

int main() {
  criterion(1, "golden labels of nG_{1|2}(3|3)", 1, [] {
    Outcome o;
    const Atlas atlas(kG);
    o.require(label_text(atlas, "2|1,3") == testing::read_golden("label_I2_R13.txt"), "label {2}|{1,3} differs");
    o.require(label_text(atlas, "|1,2,3") == testing::read_golden("label_I_R123.txt"), "label {}|{1,2,3} differs");
    o.require(label_text(atlas, "2,3|1") == testing::read_golden("label_I23_R1.txt"), "label {2,3}|{1} differs");
    return o;
  });

  criterion(2, "golden M and M' for {2}|{1,3} -> {2,3}|{1}", 1, [] {
    Outcome o;
    const Atlas atlas(kG);
    const LabelGrid& a = atlas.label(parse_chart("2|1,3")).symbolic;
    const ChartIndex target = parse_chart("2,3|1");
    o.require(render(minor_M(a, target)) == testing::read_golden("minor_M.txt"), "M differs");
    o.require(render(m_prime(a, target, label_nu)) == testing::read_golden("m_prime.txt"), "M' differs");
    return o;
  });

  criterion(3, "transition identities (identity, pairs, triples)", 630, [] {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Atlas small(kSmall);
    const SuiteReport full = run_cocycle_suite(small, TriplePolicy::parse("all"), kSeed);
    const double small_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    summarize(o, full, "nG_{1|1}(2|2) all");
    o.require(small_s < 30, "nG_{1|1}(2|2) full suite over 30s");
    o.require(skips_are_overlaps(full), "nG_{1|1}(2|2) has skips that are not empty overlaps");

    const Atlas big(kG);
    const SuiteReport std_only = run_cocycle_suite(big, TriplePolicy::parse("standard-only"), kSeed);
    summarize(o, std_only, "nG_{1|2}(3|3) standard-only");
    const SuiteReport mixed = mixed_pairs(big);
    summarize(o, mixed, "nG_{1|2}(3|3) mixed pairs");
    o.require(skips_are_overlaps(mixed), "nG_{1|2}(3|3) has skips that are not empty overlaps");
    return o;
  });

  criterion(4, "kernel properties on 1000 random instances each", 120, [] {
    Outcome o;
    const std::size_t al = 2, be = 4;
    testing::Gen g(kSeed);
    const NuStructure nu = NuStructure::canonical(be);
    int supercomm = 0, involution = 0, flip = 0, inverse = 0, matrix = 0;
    for (int i = 0; i < kRandomCases; ++i) {
      const unsigned pa = g.coin(), pb = g.coin();
      const SuperElem a = g.homogeneous(al, be, pa), b = g.homogeneous(al, be, pb);
      const SuperElem ba = b * a;
      supercomm += (a * b == ((pa & pb) ? -ba : ba)) ? 0 : 1;
    }
    for (int i = 0; i < kRandomCases; ++i) {
      const unsigned p = g.coin();
      const SuperElem a = g.homogeneous(al, be, p);
      const SuperElem image = nu.apply(a);
      involution += nu.apply(image) == a ? 0 : 1;
      if (!a.is_zero()) flip += image.parity() == (p ? Parity::Even : Parity::Odd) ? 0 : 1;
    }
    for (int i = 0; i < kRandomCases; ++i) {
      SuperElem a = g.invertible_even(al, be);
      if (g.coin()) {
        RatFunc f = g.ratfunc(al);
        if (!f.is_zero()) a = a.scaled(f);
      }
      inverse += a * invert_even(a) == SuperElem::one(al, be) ? 0 : 1;
    }
    const Split splits[] = {{1, 1}, {2, 1}, {1, 2}, {2, 2}};
    for (int i = 0; i < kRandomCases; ++i) {
      const Split s = splits[i % 4];
      const SMatrix m = g.even_supermatrix(s, al, be);
      matrix += smat_mul(m, smat_inv(m, &nu), &nu) == smat_identity(s, al, be) ? 0 : 1;
    }
    o.require(supercomm == 0, std::to_string(supercomm) + " supercommutativity failures");
    o.require(involution == 0, std::to_string(involution) + " nu^2 != id failures");
    o.require(flip == 0, std::to_string(flip) + " parity flip failures");
    o.require(inverse == 0, std::to_string(inverse) + " invert_even failures");
    o.require(matrix == 0, std::to_string(matrix) + " M*M^-1 != I failures");
    return o;
  });

  criterion(5, "reduced geometry: g~, chi o psi, diagram, Lambda image", 120, [] {
    Outcome o;
    for (const GrassSpec s : {kSmall, kG}) {
      const Atlas atlas(s);
      TransitionCache cache(atlas);
      const auto standard = atlas.standard_positions();
      const auto& cs = atlas.charts();
      std::size_t gt_bad = 0, cp_bad = 0, diag_bad = 0, lam_bad = 0, diag_points = 0, lam_points = 0;
      std::string first;
      auto note = [&](const std::string& w) {
        if (first.empty()) first = w;
      };
      for (auto a : standard) {
        if (auto d = chi_psi_defect(atlas, cs[a])) {
          ++cp_bad;
          note("chi o psi " + cs[a].to_string() + ": " + *d);
        }
        const auto big_a = BigChartIndex::associated(cs[a], s.m);
        const SampleReport lam = check_lambda_image(atlas, cs[a], big_a, kSamples, mix_seed(kSeed, a, atlas.size()));
        lam_points += lam.tested;
        if (!lam.ok()) {
          ++lam_bad;
          note("Lambda " + cs[a].to_string() + ": " + lam.witness.value_or(""));
        }
        for (auto b : standard) {
          if (a == b) continue;
          const TransitionMap& g = detail::need(cache, a, b);
          if (auto d = gtilde_defect(s, g)) {
            ++gt_bad;
            note("g~ " + cs[a].to_string() + " -> " + cs[b].to_string() + ": " + *d);
          }
          const SampleReport dia = check_diagram(atlas, g, big_a, BigChartIndex::associated(cs[b], s.m), kSamples,
                                                 mix_seed(kSeed, a, b));
          diag_points += dia.tested;
          if (!dia.ok()) {
            ++diag_bad;
            note("diagram " + cs[a].to_string() + " -> " + cs[b].to_string() + ": " + dia.witness.value_or(""));
          }
        }
      }
      const std::size_t pairs = standard.size() * (standard.size() - 1);
      std::ostringstream os;
      os << s.to_string() << ": g~ " << pairs - gt_bad << "/" << pairs << ", chi o psi " << standard.size() - cp_bad
         << "/" << standard.size() << ", diagram " << pairs - diag_bad << "/" << pairs << " pairs (" << diag_points
         << " points), Lambda " << standard.size() - lam_bad << "/" << standard.size() << " charts (" << lam_points
         << " points)";
      o.info(os.str());
      if (!first.empty()) o.info("  first witness: " + first);
      o.require(gt_bad == 0 && cp_bad == 0, s.to_string() + ": symbolic checks fail");
      o.require(diag_bad == 0, s.to_string() + ": diagram fails at sampled points");
      o.require(lam_bad == 0, s.to_string() + ": psi leaves the Lambda image");
    }
    return o;
  });

  criterion(6, "bundle: eta pairs, eta standard triples, h report", 120, [] {
    Outcome o;
    const Atlas small(kSmall);
    const SuiteReport all = run_bundle_suite(small, TriplePolicy::parse("all"), kSeed);
    const auto pass = all.count("bundle.eta_pair", Status::Pass);
    const auto fail = all.count("bundle.eta_pair", Status::Fail);
    const auto skip = all.count("bundle.eta_pair", Status::Skipped);
    o.info("nG_{1|1}(2|2) eta pairs: " + std::to_string(pass) + " pass, " + std::to_string(fail) + " fail, " +
           std::to_string(skip) + " skipped");
    for (const auto& it : all.items)
      if (it.check == "bundle.eta_pair" && it.status == Status::Fail)
        o.info("  [" + it.charts[0] + " " + it.charts[1] + "] " + it.witness);
    o.require(fail == 0, "eta pair condition fails on an overlapping pair");

    for (const GrassSpec s : {kSmall, kG}) {
      const Atlas atlas(s);
      const SuiteReport rep = run_bundle_suite(atlas, TriplePolicy::parse("standard-only"), kSeed);
      std::ostringstream os;
      os << s.to_string() << " standard-only: eta_triple " << rep.count("bundle.eta_triple", Status::Pass) << " pass "
         << rep.count("bundle.eta_triple", Status::Fail) << " fail; h_pair " << rep.count("bundle.h_pair", Status::Pass)
         << " pass " << rep.count("bundle.h_pair", Status::Fail) << " fail; h_triple "
         << rep.count("bundle.h_triple", Status::Pass) << " pass " << rep.count("bundle.h_triple", Status::Fail)
         << " fail";
      o.info(os.str());
      o.require(rep.count("bundle.eta_triple", Status::Fail) == 0, s.to_string() + ": eta triple fails");
      o.require(rep.count("bundle.h_triple", Status::Fail) == 0 && rep.count("bundle.h_pair", Status::Fail) == 0,
                s.to_string() + ": h fails on standard charts");
    }
    const auto h_fail = all.count("bundle.h_pair", Status::Fail) + all.count("bundle.h_triple", Status::Fail);
    o.info("nG_{1|1}(2|2) all charts: h items failing " + std::to_string(h_fail) + " (reported, not gated)");
    return o;
  });

  criterion(7, "verify all --json is byte-identical across runs", 300, [] {
    Outcome o;
    const std::vector<std::string> args{"--k", "1", "--l", "1", "--m", "2", "--n", "2", "--json",
                                        "--seed", "7", "--samples", "30", "verify", "all"};
    int c1 = 0, c2 = 0;
    const std::string a = run_cli_capture(args, c1);
    const std::string b = run_cli_capture(args, c2);
    o.info("report size " + std::to_string(a.size()) + " bytes, exit codes " + std::to_string(c1) + "/" +
           std::to_string(c2));
    o.require(!a.empty() && a == b && c1 == c2, "reports differ");
    return o;
  });

  std::cout << (failures == 0 ? "acceptance: all criteria pass\n"
                              : "acceptance: " + std::to_string(failures) + " criteria fail\n");
  return failures == 0 ? 0 : 1;
}
