#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nugrass/atlas.hpp"
#include "nugrass/bundle.hpp"
#include "nugrass/transitions.hpp"
#include "nugrass/verify.hpp"

namespace nugrass {

using Json = nlohmann::ordered_json;

inline Json space_json(const GrassSpec& s) {
  return Json{{"k", s.k}, {"l", s.l}, {"m", s.m}, {"n", s.n}, {"alpha", s.alpha()}, {"beta", s.beta()}};
}

inline Json matrix_json(const SMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return Json{{"row_split", {m.row_split().even, m.row_split().odd}},
              {"col_split", {m.col_split().even, m.col_split().odd}},
              {"parity", m.parity()},
              {"entries", std::move(rows)}};
}

inline Json label_json(const ChartLabel& label, const GrassSpec& space) {
  Json symbolic = Json::array();
  for (std::size_t r = 0; r < label.symbolic.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < label.symbolic.cols(); ++c) row.push_back(label.symbolic(r, c).to_string());
    symbolic.push_back(std::move(row));
  }
  Json order = Json::array();
  for (const auto& g : label.order) order.push_back(g.name());
  return Json{{"I", label.index.I},
              {"R", label.index.R},
              {"standard", label.index.is_standard(space)},
              {"p", label.index.p()},
              {"q", label.index.q()},
              {"matrix", std::move(symbolic)},
              {"generator_order", std::move(order)}};
}

inline Json atlas_json(const Atlas& atlas) {
  Json charts = Json::array();
  for (std::size_t i = 0; i < atlas.size(); ++i) charts.push_back(label_json(atlas.label_at(i), atlas.space()));
  return Json{{"space", atlas.space().to_string()},
              {"dimensions", space_json(atlas.space())},
              {"nu", atlas.nu_summary()},
              {"count", atlas.size()},
              {"standard_count", atlas.standard_positions().size()},
              {"charts", std::move(charts)}};
}

inline Json transition_json(const TransitionMap& t) {
  Json table = Json::object();
  for (std::size_t i = 0; i < t.even.size(); ++i) table["x" + std::to_string(i + 1)] = t.even[i].to_string();
  for (std::size_t j = 0; j < t.odd.size(); ++j) table["e" + std::to_string(j + 1)] = t.odd[j].to_string();
  return Json{{"source", t.source.to_string()},
              {"target", t.target.to_string()},
              {"status", "ok"},
              {"table", std::move(table)},
              {"domain_certificate", t.domain_certificate.to_string()}};
}

inline Json report_json(const SuiteReport& rep) {
  Json items = Json::array();
  for (const auto& it : rep.items) {
    Json j{{"check", it.check}, {"charts", it.charts}, {"status", to_string(it.status)}};
    if (!it.witness.empty()) j["witness"] = it.witness;
    if (it.tested + it.skipped_points > 0) {
      j["points_tested"] = it.tested;
      j["points_skipped"] = it.skipped_points;
    }
    items.push_back(std::move(j));
  }
  return Json{{"suite", rep.suite},
              {"space", rep.space.to_string()},
              {"nu", rep.nu_config},
              {"policy", rep.policy},
              {"totals",
               {{"items", rep.items.size()},
                {"pass", rep.count(Status::Pass)},
                {"fail", rep.count(Status::Fail)},
                {"skipped", rep.count(Status::Skipped)}}},
              {"items", std::move(items)}};
}

/// Reads a pairing from JSON: {"permutation": [...]} or {"pairing": [[...], ...]}
/// with integer or "p/q" string entries.
inline NuStructure nu_from_json(const Json& j, std::size_t beta) {
  try {
    if (!j.is_object()) fail(ErrorCode::ParseError, "nu file must hold a JSON object");
    if (j.contains("permutation")) return NuStructure::with_permutation(beta, j.at("permutation").get<std::vector<std::size_t>>());
    if (j.contains("pairing")) {
      const Json& rows = j.at("pairing");
      if (!rows.is_array() || rows.empty()) fail(ErrorCode::ParseError, "pairing must be a non-empty array");
      DenseMatrix<Rat> a(rows.size(), rows.size(), Rat(0));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != rows.size()) fail(ErrorCode::ParseError, "pairing must be square");
        for (std::size_t c = 0; c < rows.size(); ++c) {
          const Json& v = rows[r][c];
          if (v.is_number_integer()) a(r, c) = Rat(v.get<long>());
          else if (v.is_string()) a(r, c) = parse_rat(v.get<std::string>());
          else fail(ErrorCode::ParseError, "pairing entries must be integers or \"p/q\" strings");
        }
      }
      return NuStructure::with_pairing(beta, a);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("nu file: ") + e.what());
  }
  fail(ErrorCode::ParseError, "nu file needs a \"permutation\" or \"pairing\" key");
}

}  // namespace nugrass
