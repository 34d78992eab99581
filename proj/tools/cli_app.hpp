#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nugrass/json_io.hpp"
#include "nugrass/verify.hpp"

namespace nugrass::cli {

struct Config {
  GrassSpec space;
  std::string nu = "identity";
  bool json = false;
  std::string out;
  std::size_t samples = 100;
  std::uint64_t seed = 42;
  std::string triples = "all";
};

/// Thrown for usage problems detected after parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Atlas make_atlas(const Config& cfg) {
  cfg.space.validate();
  std::optional<NuStructure> nu;
  if (cfg.nu != "identity") {
    std::ifstream in(cfg.nu);
    if (!in) throw UsageError("cannot read nu file '" + cfg.nu + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("nu file '" + cfg.nu + "' is not valid JSON: " + e.what());
    }
    nu = nu_from_json(j, cfg.space.beta());
  }
  return Atlas(cfg.space, std::move(nu));
}

inline std::string atlas_text(const Atlas& atlas) {
  std::ostringstream os;
  os << atlas.space().to_string() << ": " << atlas.size() << " charts, " << atlas.standard_positions().size()
     << " standard\n";
  os << "nu: " << atlas.nu_summary() << "\n";
  for (std::size_t i = 0; i < atlas.size(); ++i) {
    const ChartIndex& c = atlas.charts()[i];
    os << "  " << c.to_string() << "  " << c.p() << "|" << c.q()
       << (c.is_standard(atlas.space()) ? "  standard" : "  non-standard") << "\n";
  }
  return os.str();
}

inline std::string label_text(const ChartLabel& label) {
  return render(label.symbolic) + "\ngenerators: " + label.generator_order_string() + "\n";
}

inline std::string transition_text(const TransitionMap& t) {
  std::ostringstream os;
  os << "g*: " << t.source.to_string() << " -> " << t.target.to_string() << "\n";
  for (std::size_t i = 0; i < t.even.size(); ++i) os << "  x" << i + 1 << " = " << t.even[i].to_string() << "\n";
  for (std::size_t j = 0; j < t.odd.size(); ++j) os << "  e" << j + 1 << " = " << t.odd[j].to_string() << "\n";
  os << "domain certificate: " << t.domain_certificate.to_string() << "\n";
  return os.str();
}

inline std::string report_text(const SuiteReport& rep) {
  std::ostringstream os;
  os << "suite " << rep.suite << " on " << rep.space.to_string() << " (" << rep.policy << "; nu: " << rep.nu_config
     << ")\n";
  std::vector<std::string> checks;
  for (const auto& it : rep.items)
    if (std::find(checks.begin(), checks.end(), it.check) == checks.end()) checks.push_back(it.check);
  for (const auto& c : checks)
    os << "  " << c << ": " << rep.count(c, Status::Pass) << " pass, " << rep.count(c, Status::Fail) << " fail, "
       << rep.count(c, Status::Skipped) << " skipped\n";
  for (const auto& it : rep.items) {
    if (it.status != Status::Fail) continue;
    os << "  FAIL " << it.check << " [";
    for (std::size_t i = 0; i < it.charts.size(); ++i) os << (i ? ", " : "") << it.charts[i];
    os << "] " << it.witness << "\n";
  }
  return os.str();
}

/// Runs the command line; returns the process exit code (0 ok, 1 failed checks, 2 usage).
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Atlas, transitions and verification suites for nu-Grassmannians nG_{k|l}(m|n)"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--k", cfg.space.k, "even rank k")->required();
  app.add_option("--l", cfg.space.l, "odd rank l")->required();
  app.add_option("--m", cfg.space.m, "even dimension m")->required();
  app.add_option("--n", cfg.space.n, "odd dimension n")->required();
  app.add_option("--nu", cfg.nu, "'identity' or a JSON file with a pairing or permutation");
  app.add_flag("--json", cfg.json, "emit JSON");
  app.add_option("--out", cfg.out, "write output to this file");
  app.add_option("--samples", cfg.samples, "sampled points per reduced check");
  app.add_option("--seed", cfg.seed, "seed for sampling");
  app.add_option("--triples", cfg.triples, "all | standard-only | sample:N");

  auto* atlas_cmd = app.add_subcommand("atlas", "list the charts");
  std::string label_i, label_r;
  auto* label_cmd = app.add_subcommand("label", "print the label A_{I|R}");
  label_cmd->add_option("--I", label_i, "even indices, comma separated")->required();
  label_cmd->add_option("--R", label_r, "odd indices, comma separated")->required();
  std::string from, to;
  auto* trans_cmd = app.add_subcommand("transition", "print g*_{from,to}");
  trans_cmd->add_option("--from", from, "source chart as I|R")->required();
  trans_cmd->add_option("--to", to, "target chart as I|R")->required();
  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("suite", suite, "cocycle | bundle | reduced | all")
      ->required()
      ->check(CLI::IsMember({"cocycle", "bundle", "reduced", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string text;
  int code = 0;
  try {
    const Atlas atlas = make_atlas(cfg);
    if (atlas_cmd->parsed()) {
      text = cfg.json ? atlas_json(atlas).dump(2) + "\n" : atlas_text(atlas);
    } else if (label_cmd->parsed()) {
      const ChartIndex idx{parse_index_list(label_i), parse_index_list(label_r)};
      const ChartLabel& label = atlas.label(idx);
      text = cfg.json ? label_json(label, atlas.space()).dump(2) + "\n" : label_text(label);
    } else if (trans_cmd->parsed()) {
      const ChartIndex a = parse_chart(from), b = parse_chart(to);
      a.validate(atlas.space());
      b.validate(atlas.space());
      try {
        const TransitionMap t = compute_transition(atlas, a, b);
        text = cfg.json ? transition_json(t).dump(2) + "\n" : transition_text(t);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyOverlap) throw;
        const Json j{{"source", a.to_string()}, {"target", b.to_string()}, {"status", "empty-overlap"}};
        text = cfg.json ? j.dump(2) + "\n" : "g*: " + a.to_string() + " -> " + b.to_string() + "\nstatus: empty-overlap\n";
      }
    } else if (verify_cmd->parsed()) {
      const TriplePolicy policy = TriplePolicy::parse(cfg.triples);
      std::vector<SuiteReport> reports;
      if (suite == "cocycle" || suite == "all") reports.push_back(run_cocycle_suite(atlas, policy, cfg.seed));
      if (suite == "bundle" || suite == "all") reports.push_back(run_bundle_suite(atlas, policy, cfg.seed));
      if (suite == "reduced" || suite == "all") reports.push_back(run_reduced_suite(atlas, cfg.samples, cfg.seed));
      bool ok = true;
      for (const auto& r : reports) ok = ok && r.passed();
      code = ok ? 0 : 1;
      if (cfg.json) {
        Json j{{"space", atlas.space().to_string()},
               {"seed", cfg.seed},
               {"samples", cfg.samples},
               {"status", ok ? "pass" : "fail"},
               {"reports", Json::array()}};
        for (const auto& r : reports) j["reports"].push_back(report_json(r));
        text = j.dump(2) + "\n";
      } else {
        for (const auto& r : reports) text += report_text(r);
        text += ok ? "result: pass\n" : "result: fail\n";
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return 2;
    }
    f << text;
  }
  return code;
}

}  // namespace nugrass::cli
