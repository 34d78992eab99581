#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nugrass/dense_matrix.hpp"
#include "nugrass/errors.hpp"
#include "nugrass/ratfunc.hpp"

namespace nugrass {

/// Set of odd generators e_i, bit (i-1) set when e_i is present.
using OddMask = std::uint32_t;

inline constexpr std::size_t kMaxOdd = 24;

inline unsigned mask_size(OddMask m) { return static_cast<unsigned>(std::popcount(m)); }

/// Graded lexicographic order on masks: by size, then lexicographic on the
/// ascending index lists ({1,2} < {1,3} < {2,3}).
inline bool mask_less(OddMask a, OddMask b) {
  const unsigned sa = mask_size(a), sb = mask_size(b);
  if (sa != sb) return sa < sb;
  if (a == b) return false;
  const OddMask diff = a ^ b;
  const OddMask lowest = diff & (~diff + 1);
  return (a & lowest) != 0;
}

/// Sign of e_A * e_B once reordered to ascending order. Requires disjoint masks.
inline int wedge_sign(OddMask a, OddMask b) {
  unsigned swaps = 0;
  for (OddMask rest = b; rest != 0; rest &= rest - 1) {
    const unsigned j = static_cast<unsigned>(std::countr_zero(rest));
    swaps += static_cast<unsigned>(std::popcount(a >> (j + 1)));
  }
  return (swaps & 1U) ? -1 : 1;
}

inline std::string mask_to_string(OddMask m) {
  std::string s;
  for (OddMask rest = m; rest != 0; rest &= rest - 1) s += "e" + std::to_string(std::countr_zero(rest) + 1);
  return s;
}

enum class Parity { Even, Odd, Mixed };

inline std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Mixed: return "mixed";
  }
  return "?";
}

/// Element of Q(x1..x_alpha) (x) Lambda[e1..e_beta]: a finite sum of
/// rational-function coefficients times odd monomials.
class SuperElem {
 public:
  using Term = std::pair<OddMask, RatFunc>;

  SuperElem() = default;
  SuperElem(std::size_t alpha, std::size_t beta) : alpha_(alpha), beta_(beta) {
    if (beta > kMaxOdd) fail(ErrorCode::ContextMismatch, "too many odd generators: " + std::to_string(beta));
  }

  static SuperElem scalar(std::size_t alpha, std::size_t beta, const RatFunc& c) {
    SuperElem r(alpha, beta);
    if (!c.is_zero()) r.terms_.emplace_back(0, c);
    return r;
  }
  static SuperElem constant(std::size_t alpha, std::size_t beta, const Rat& c) {
    return scalar(alpha, beta, RatFunc::constant(alpha, c));
  }
  static SuperElem one(std::size_t alpha, std::size_t beta) { return constant(alpha, beta, 1); }

  /// x_{i+1}
  static SuperElem even_var(std::size_t alpha, std::size_t beta, std::size_t i) {
    return scalar(alpha, beta, RatFunc::variable(alpha, i));
  }

  /// e_{j+1}
  static SuperElem odd_gen(std::size_t alpha, std::size_t beta, std::size_t j) {
    if (j >= beta) fail(ErrorCode::IndexOutOfRange, "odd generator e" + std::to_string(j + 1));
    return monomial(alpha, beta, OddMask{1} << j, RatFunc::constant(alpha, 1));
  }

  static SuperElem monomial(std::size_t alpha, std::size_t beta, OddMask m, const RatFunc& c) {
    SuperElem r(alpha, beta);
    if (!c.is_zero()) r.terms_.emplace_back(m, c);
    return r;
  }

  std::size_t alpha() const { return alpha_; }
  std::size_t beta() const { return beta_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  RatFunc coefficient(OddMask m) const {
    for (const auto& [mask, c] : terms_)
      if (mask == m) return c;
    return RatFunc(alpha_);
  }

  /// Empty-mask coefficient: the image modulo nilpotents.
  RatFunc body() const { return coefficient(0); }

  /// Zero counts as even.
  Parity parity() const {
    bool even = false, odd = false;
    for (const auto& t : terms_) (mask_size(t.first) % 2 ? odd : even) = true;
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
  }

  SuperElem operator-() const {
    SuperElem r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  SuperElem operator+(const SuperElem& o) const { return merge(o, false); }
  SuperElem operator-(const SuperElem& o) const { return merge(o, true); }

  SuperElem operator*(const SuperElem& o) const {
    check_context(o);
    SuperElem r(alpha_, beta_);
    if (is_zero() || o.is_zero()) return r;
    std::vector<Term> raw;
    raw.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        if (ma & mb) continue;
        RatFunc c = ca * cb;
        if (wedge_sign(ma, mb) < 0) c = -c;
        raw.emplace_back(ma | mb, std::move(c));
      }
    r.terms_ = combine(std::move(raw));
    return r;
  }

  SuperElem scaled(const RatFunc& c) const {
    if (c.is_zero()) return SuperElem(alpha_, beta_);
    SuperElem r = *this;
    for (auto& t : r.terms_) t.second = t.second * c;
    return r;
  }

  SuperElem& operator+=(const SuperElem& o) { return *this = *this + o; }
  SuperElem& operator-=(const SuperElem& o) { return *this = *this - o; }
  SuperElem& operator*=(const SuperElem& o) { return *this = *this * o; }

  /// Coefficient-wise exact equality.
  friend bool operator==(const SuperElem& a, const SuperElem& b) {
    if (a.alpha_ != b.alpha_ || a.beta_ != b.beta_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].first != b.terms_[i].first) return false;
      if (!ratfunc_eq(a.terms_[i].second, b.terms_[i].second)) return false;
    }
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      std::string t = term_string(terms_[i].first, terms_[i].second);
      if (i == 0) {
        out = t;
      } else if (t.front() == '-') {
        out += " - " + t.substr(1);
      } else {
        out += " + " + t;
      }
    }
    return out;
  }

  /// Builds an element from unsorted, possibly repeated terms.
  static SuperElem from_terms(std::size_t alpha, std::size_t beta, std::vector<Term> raw) {
    SuperElem r(alpha, beta);
    r.terms_ = combine(std::move(raw));
    return r;
  }

 private:
  void check_context(const SuperElem& o) const {
    if (alpha_ != o.alpha_ || beta_ != o.beta_)
      fail(ErrorCode::ContextMismatch, "super elements over different (alpha, beta)");
  }

  static std::vector<Term> combine(std::vector<Term> raw) {
    std::stable_sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return mask_less(x.first, y.first); });
    std::vector<Term> out;
    out.reserve(raw.size());
    for (auto& t : raw) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        if (!out.empty() && out.back().second.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().second.is_zero()) out.pop_back();
    return out;
  }

  SuperElem merge(const SuperElem& o, bool subtract) const {
    check_context(o);
    SuperElem r(alpha_, beta_);
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && mask_less(i->first, j->first))) {
        r.terms_.push_back(*i++);
      } else if (i == terms_.end() || mask_less(j->first, i->first)) {
        r.terms_.emplace_back(j->first, subtract ? -j->second : j->second);
        ++j;
      } else {
        RatFunc c = subtract ? i->second - j->second : i->second + j->second;
        if (!c.is_zero()) r.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  static std::string term_string(OddMask m, const RatFunc& c) {
    std::string cs = c.to_string();
    if (m == 0) return cs;
    const std::string ms = mask_to_string(m);
    if (cs == "1") return ms;
    if (cs == "-1") return "-" + ms;
    const bool compound = cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos;
    return (compound ? "(" + cs + ")" : cs) + "*" + ms;
  }

  std::size_t alpha_ = 0;
  std::size_t beta_ = 0;
  std::vector<Term> terms_;
};

inline SuperElem elem_mul(const SuperElem& a, const SuperElem& b) { return a * b; }
inline Parity parity(const SuperElem& a) { return a.parity(); }
inline RatFunc body(const SuperElem& a) { return a.body(); }

/// Inverse of an even element with nonzero body, via the terminating
/// geometric series b^-1 * sum_t (-n)^t with n = b^-1 (a - b).
inline SuperElem invert_even(const SuperElem& a) {
  if (a.parity() != Parity::Even) fail(ErrorCode::ParityError, "invert_even of a non-even element " + a.to_string());
  const RatFunc b = a.body();
  if (b.is_zero()) fail(ErrorCode::NotInvertible, "element with zero body: " + a.to_string());
  const RatFunc binv = b.inv();
  const SuperElem soul = (a - SuperElem::scalar(a.alpha(), a.beta(), b)).scaled(binv);
  if (soul.is_zero()) return SuperElem::scalar(a.alpha(), a.beta(), binv);
  const SuperElem neg = -soul;
  SuperElem sum = SuperElem::one(a.alpha(), a.beta());
  SuperElem power = sum;
  for (std::size_t t = 1; t <= a.beta() / 2 + 1; ++t) {
    power = power * neg;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum.scaled(binv);
}

/// The odd involution nu = id (x) T on Q(x) (x) Lambda R^beta, with T given in
/// the ordered basis (even masks, then odd masks) by [[0, A], [A^-1, 0]].
class NuStructure {
 public:
  NuStructure() = default;

  /// Canonical basis order with pairing A = identity.
  static NuStructure canonical(std::size_t beta) {
    NuStructure nu = skeleton(beta);
    const std::size_t half = nu.even_basis_.size();
    nu.pairing_ = DenseMatrix<Rat>::identity(half, Rat(0), Rat(1));
    nu.pairing_inv_ = nu.pairing_;
    nu.identity_ = true;
    nu.build_images();
    return nu;
  }

  static NuStructure with_pairing(std::size_t beta, const DenseMatrix<Rat>& pairing) {
    NuStructure nu = skeleton(beta);
    const std::size_t half = nu.even_basis_.size();
    if (pairing.rows() != half || pairing.cols() != half)
      fail(ErrorCode::ShapeMismatch, "pairing must be " + std::to_string(half) + "x" + std::to_string(half));
    auto inv = pairing.inverse(Rat(1));
    if (!inv) fail(ErrorCode::Singular, "pairing matrix is not invertible");
    nu.pairing_ = pairing;
    nu.pairing_inv_ = *inv;
    nu.identity_ = pairing == DenseMatrix<Rat>::identity(half, Rat(0), Rat(1));
    nu.build_images();
    return nu;
  }

  /// Pairing that is a permutation matrix: T(odd_basis[j]) = even_basis[perm[j]].
  static NuStructure with_permutation(std::size_t beta, const std::vector<std::size_t>& perm) {
    const std::size_t half = std::size_t{1} << (beta == 0 ? 0 : beta - 1);
    if (perm.size() != half) fail(ErrorCode::ShapeMismatch, "permutation length must be " + std::to_string(half));
    DenseMatrix<Rat> a(half, half, Rat(0));
    std::vector<bool> seen(half, false);
    for (std::size_t j = 0; j < half; ++j) {
      if (perm[j] >= half || seen[perm[j]]) fail(ErrorCode::ParseError, "not a permutation");
      seen[perm[j]] = true;
      a(perm[j], j) = 1;
    }
    return with_pairing(beta, a);
  }

  std::size_t beta() const { return beta_; }
  const std::vector<OddMask>& even_basis() const { return even_basis_; }
  const std::vector<OddMask>& odd_basis() const { return odd_basis_; }
  const DenseMatrix<Rat>& pairing() const { return pairing_; }
  bool is_identity_pairing() const { return identity_; }

  /// T applied to a single basis monomial, as (mask, coefficient) pairs.
  const std::vector<std::pair<OddMask, Rat>>& image(OddMask m) const { return images_.at(m); }

  SuperElem apply(const SuperElem& a) const {
    if (a.beta() != beta_) fail(ErrorCode::ContextMismatch, "nu built for beta=" + std::to_string(beta_));
    std::vector<SuperElem::Term> raw;
    for (const auto& [mask, c] : a.terms())
      for (const auto& [target, w] : images_[mask]) raw.emplace_back(target, c.scaled(w));
    return SuperElem::from_terms(a.alpha(), a.beta(), std::move(raw));
  }

  std::string summary() const {
    if (identity_) return "canonical basis, pairing=identity";
    std::string s = "canonical basis, pairing=[";
    for (std::size_t i = 0; i < pairing_.rows(); ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < pairing_.cols(); ++j) s += (j ? " " : "") + pairing_(i, j).get_str();
    }
    return s + "]";
  }

 private:
  static NuStructure skeleton(std::size_t beta) {
    if (beta == 0 || beta > kMaxOdd)
      fail(ErrorCode::BadSpace, "an odd involution needs 1 <= beta <= " + std::to_string(kMaxOdd));
    NuStructure nu;
    nu.beta_ = beta;
    std::vector<OddMask> all(std::size_t{1} << beta);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<OddMask>(i);
    std::sort(all.begin(), all.end(), mask_less);
    for (OddMask m : all) (mask_size(m) % 2 ? nu.odd_basis_ : nu.even_basis_).push_back(m);
    return nu;
  }

  void build_images() {
    images_.assign(std::size_t{1} << beta_, {});
    const std::size_t half = even_basis_.size();
    for (std::size_t i = 0; i < half; ++i) {
      // column i of the lower-left block A^-1
      auto& img = images_[even_basis_[i]];
      for (std::size_t r = 0; r < half; ++r)
        if (pairing_inv_(r, i) != 0) img.emplace_back(odd_basis_[r], pairing_inv_(r, i));
    }
    for (std::size_t j = 0; j < half; ++j) {
      auto& img = images_[odd_basis_[j]];
      for (std::size_t r = 0; r < half; ++r)
        if (pairing_(r, j) != 0) img.emplace_back(even_basis_[r], pairing_(r, j));
    }
  }

  std::size_t beta_ = 0;
  std::vector<OddMask> even_basis_;
  std::vector<OddMask> odd_basis_;
  DenseMatrix<Rat> pairing_;
  DenseMatrix<Rat> pairing_inv_;
  bool identity_ = false;
  std::vector<std::vector<std::pair<OddMask, Rat>>> images_;
};

inline SuperElem nu_apply(const NuStructure& nu, const SuperElem& a) { return nu.apply(a); }

}  // namespace nugrass
