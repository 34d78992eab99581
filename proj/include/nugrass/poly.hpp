#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nugrass/errors.hpp"
#include "nugrass/rational.hpp"

namespace nugrass {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector x1^a1 ... xN^aN. Unused trailing slots stay zero.
struct Mono {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t degree = 0;

  static Mono var(std::size_t i, std::uint16_t power = 1) {
    Mono m;
    m.exp[i] = power;
    m.degree = power;
    return m;
  }

  bool is_one() const { return degree == 0; }

  Mono operator*(const Mono& o) const {
    Mono r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] + o.exp[i]);
    r.degree = degree + o.degree;
    return r;
  }

  bool divides(const Mono& o) const {
    if (degree > o.degree) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > o.exp[i]) return false;
    return true;
  }

  /// Requires divisor.divides(*this).
  Mono operator/(const Mono& divisor) const {
    Mono r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] - divisor.exp[i]);
    r.degree = degree - divisor.degree;
    return r;
  }

  static Mono gcd(const Mono& a, const Mono& b) {
    Mono r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.exp[i] = std::min(a.exp[i], b.exp[i]);
      r.degree += r.exp[i];
    }
    return r;
  }

  friend bool operator==(const Mono&, const Mono&) = default;
};

/// Graded lexicographic order, x1 > x2 > ... ; true when a comes first.
inline bool grlex_greater(const Mono& a, const Mono& b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i];
  return false;
}

/// Sparse polynomial over Q. Terms are kept sorted in descending grlex order
/// with no zero coefficients, so structural equality is polynomial equality.
class Poly {
 public:
  struct Term {
    Mono mono;
    Rat coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {
    if (nvars > kMaxVars) fail(ErrorCode::ContextMismatch, "too many even variables: " + std::to_string(nvars));
  }

  static Poly constant(std::size_t nvars, const Rat& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({Mono{}, c});
    return p;
  }

  static Poly variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i + 1));
    Poly p(nvars);
    p.terms_.push_back({Mono::var(i), Rat(1)});
    return p;
  }

  static Poly monomial(std::size_t nvars, const Mono& m, const Rat& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }
  const Term& leading() const { return terms_.front(); }
  std::uint32_t total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree; }

  Rat constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return Rat(0);
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Poly operator+(const Poly& o) const { return merge(o, false); }
  Poly operator-(const Poly& o) const { return merge(o, true); }

  Poly operator*(const Poly& o) const {
    check_context(o);
    Poly r(nvars_);
    if (is_zero() || o.is_zero()) return r;
    if (o.is_constant()) return scaled(o.terms_[0].coeff);
    if (is_constant()) return o.scaled(terms_[0].coeff);
    std::vector<Term> raw;
    raw.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) raw.push_back({a.mono * b.mono, a.coeff * b.coeff});
    std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return grlex_greater(x.mono, y.mono); });
    for (auto& t : raw) {
      if (!r.terms_.empty() && r.terms_.back().mono == t.mono) {
        r.terms_.back().coeff += t.coeff;
      } else {
        if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
        r.terms_.push_back(std::move(t));
      }
    }
    if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
    return r;
  }

  Poly scaled(const Rat& c) const {
    Poly r(nvars_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  Poly times_mono(const Mono& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) t.mono = t.mono * m;
    return r;
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(unsigned e) const {
    Poly result = constant(nvars_, 1);
    Poly base = *this;
    while (e > 0) {
      if (e & 1U) result = result * base;
      e >>= 1U;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// Largest monomial dividing every term (1 for the zero polynomial).
  Mono monomial_content() const {
    if (terms_.empty()) return Mono{};
    Mono g = terms_.front().mono;
    for (const auto& t : terms_) g = Mono::gcd(g, t.mono);
    return g;
  }

  /// Requires m to divide every term.
  Poly divided_by_mono(const Mono& m) const {
    Poly r = *this;
    for (auto& t : r.terms_) t.mono = t.mono / m;
    return r;
  }

  /// Quotient when `d` divides this polynomial exactly in Q[x], nullopt otherwise.
  std::optional<Poly> exact_div(const Poly& d) const {
    check_context(d);
    if (d.is_zero()) fail(ErrorCode::ZeroInverse, "polynomial division by zero");
    Poly q(nvars_);
    if (is_zero()) return q;
    if (d.is_constant()) return scaled(Rat(1) / d.terms_[0].coeff);
    if (total_degree() < d.total_degree()) return std::nullopt;
    Poly r = *this;
    const Term& lead = d.leading();
    std::vector<Term> quot;
    while (!r.is_zero()) {
      const Term& rt = r.leading();
      if (!lead.mono.divides(rt.mono)) return std::nullopt;
      Term t{rt.mono / lead.mono, rt.coeff / lead.coeff};
      r = r - d.times_mono(t.mono).scaled(t.coeff);
      quot.push_back(std::move(t));
    }
    q.terms_ = std::move(quot);  // produced in descending order
    return q;
  }

  Rat eval(std::span<const Rat> point) const {
    if (point.size() != nvars_) fail(ErrorCode::ContextMismatch, "point dimension mismatch");
    std::vector<std::vector<Rat>> powers(nvars_);
    Rat acc = 0;
    for (const auto& t : terms_) {
      Rat v = t.coeff;
      for (std::size_t i = 0; i < nvars_; ++i) {
        const auto e = t.mono.exp[i];
        if (e == 0) continue;
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Rat(1));
        while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
        v *= cache[e];
      }
      acc += v;
    }
    return acc;
  }

  Poly derivative(std::size_t var) const {
    Poly r(nvars_);
    for (const auto& t : terms_) {
      if (t.mono.exp[var] == 0) continue;
      Term d{t.mono, t.coeff * t.mono.exp[var]};
      d.mono.exp[var] -= 1;
      d.mono.degree -= 1;
      r.terms_.push_back(std::move(d));
    }
    // Lowering one exponent can reorder terms of equal degree.
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return grlex_greater(x.mono, y.mono); });
    return r;
  }

  std::string to_string(std::string_view var = "x") const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      const bool neg = t.coeff < 0;
      const Rat mag = neg ? Rat(-t.coeff) : t.coeff;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      const std::string mono = mono_string(t.mono, var);
      if (mono.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else {
        out += mag.get_str() + "*" + mono;
      }
    }
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

 private:
  void check_context(const Poly& o) const {
    if (nvars_ != o.nvars_)
      fail(ErrorCode::ContextMismatch, "polynomials over " + std::to_string(nvars_) + " and " +
                                           std::to_string(o.nvars_) + " variables");
  }

  Poly merge(const Poly& o, bool subtract) const {
    check_context(o);
    Poly r(nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    auto push_other = [&](const Term& t) { r.terms_.push_back({t.mono, subtract ? Rat(-t.coeff) : t.coeff}); };
    while (i != terms_.end() && j != o.terms_.end()) {
      if (i->mono == j->mono) {
        Rat c = subtract ? Rat(i->coeff - j->coeff) : Rat(i->coeff + j->coeff);
        if (c != 0) r.terms_.push_back({i->mono, std::move(c)});
        ++i;
        ++j;
      } else if (grlex_greater(i->mono, j->mono)) {
        r.terms_.push_back(*i++);
      } else {
        push_other(*j++);
      }
    }
    for (; i != terms_.end(); ++i) r.terms_.push_back(*i);
    for (; j != o.terms_.end(); ++j) push_other(*j);
    return r;
  }

  static std::string mono_string(const Mono& m, std::string_view var) {
    std::string s;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (m.exp[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += std::string(var) + std::to_string(i + 1);
      if (m.exp[i] > 1) s += "^" + std::to_string(m.exp[i]);
    }
    return s;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace nugrass
