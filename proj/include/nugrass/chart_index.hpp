#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nugrass/errors.hpp"

namespace nugrass {

/// Dimensions of the nu-Grassmannian nG_{k|l}(m|n).
struct GrassSpec {
  std::size_t k = 0, l = 0, m = 0, n = 0;

  std::size_t alpha() const { return k * (m - k) + l * (n - l); }
  std::size_t beta() const { return l * (m - k) + k * (n - l); }
  std::size_t rank() const { return k + l; }

  void validate() const {
    if (k > m) fail(ErrorCode::BadSpace, "k=" + std::to_string(k) + " exceeds m=" + std::to_string(m));
    if (l > n) fail(ErrorCode::BadSpace, "l=" + std::to_string(l) + " exceeds n=" + std::to_string(n));
    if (n < 1) fail(ErrorCode::BadSpace, "n must be at least 1");
  }

  std::string to_string() const {
    return "nG_{" + std::to_string(k) + "|" + std::to_string(l) + "}(" + std::to_string(m) + "|" +
           std::to_string(n) + ")";
  }

  friend bool operator==(const GrassSpec&, const GrassSpec&) = default;
};

/// A p|q-index I|R: ascending even indices I in 1..m and odd indices R in 1..n.
struct ChartIndex {
  std::vector<std::size_t> I;
  std::vector<std::size_t> R;

  std::size_t p() const { return I.size(); }
  std::size_t q() const { return R.size(); }
  bool is_standard(const GrassSpec& g) const { return p() == g.k; }
  /// 0 for standard, 1 otherwise.
  unsigned parity(const GrassSpec& g) const { return is_standard(g) ? 0U : 1U; }

  void validate(const GrassSpec& g) const {
    auto ascending_in = [](const std::vector<std::size_t>& v, std::size_t hi) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 1 || v[i] > hi) return false;
        if (i > 0 && v[i] <= v[i - 1]) return false;
      }
      return true;
    };
    if (!ascending_in(I, g.m) || !ascending_in(R, g.n))
      fail(ErrorCode::BadIndex, to_string() + " is not an ascending index for " + g.to_string());
    if (p() + q() != g.rank())
      fail(ErrorCode::BadIndex, to_string() + " has p+q != k+l for " + g.to_string());
  }

  /// Zero-based absolute column positions in a k|l x m|n label: I first, then m+R.
  std::vector<std::size_t> columns(std::size_t m) const {
    std::vector<std::size_t> cols;
    cols.reserve(p() + q());
    for (auto j : I) cols.push_back(j - 1);
    for (auto s : R) cols.push_back(m + s - 1);
    return cols;
  }

  std::string to_string() const {
    auto list = [](const std::vector<std::size_t>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + "}";
    };
    return list(I) + "|" + list(R);
  }

  friend bool operator==(const ChartIndex&, const ChartIndex&) = default;
  friend auto operator<=>(const ChartIndex&, const ChartIndex&) = default;
};

inline std::vector<std::size_t> parse_index_list(std::string_view text) {
  std::vector<std::size_t> out;
  std::string s;
  for (char ch : text)
    if (ch != '{' && ch != '}' && ch != ' ') s += ch;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string tok = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
      fail(ErrorCode::ParseError, "bad index list '" + std::string(text) + "'");
    out.push_back(static_cast<std::size_t>(std::stoul(tok)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Parses "I|R", e.g. "2|1,3", "{}|{1,2,3}" or "|1,2,3".
inline ChartIndex parse_chart(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) fail(ErrorCode::ParseError, "chart '" + std::string(text) + "' lacks '|'");
  return ChartIndex{parse_index_list(text.substr(0, bar)), parse_index_list(text.substr(bar + 1))};
}

}  // namespace nugrass
