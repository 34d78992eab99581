#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nugrass/chart_index.hpp"
#include "nugrass/errors.hpp"
#include "nugrass/grassmann.hpp"

namespace nugrass {

/// Even/odd split of a row or column range; even indices come first.
struct Split {
  std::size_t even = 0;
  std::size_t odd = 0;

  std::size_t total() const { return even + odd; }
  unsigned parity_of(std::size_t i) const { return i < even ? 0U : 1U; }
  friend bool operator==(const Split&, const Split&) = default;
};

/// Block-partitioned grid. The entry type decides the meaning: `Entry` for
/// computed supermatrices, a symbolic type for chart labels.
template <class T>
class BlockGrid {
 public:
  BlockGrid() = default;
  BlockGrid(Split rows, Split cols, const T& fill, unsigned parity = 0)
      : rows_(rows), cols_(cols), parity_(parity), data_(rows.total() * cols.total(), fill) {}

  Split row_split() const { return rows_; }
  Split col_split() const { return cols_; }
  std::size_t rows() const { return rows_.total(); }
  std::size_t cols() const { return cols_.total(); }
  /// 0 for an even supermatrix, 1 for an odd one.
  unsigned parity() const { return parity_; }
  void set_parity(unsigned p) { parity_ = p & 1U; }

  /// Required parity of the entry at (r, c).
  unsigned slot_parity(std::size_t r, std::size_t c) const {
    return (rows_.parity_of(r) + cols_.parity_of(c) + parity_) & 1U;
  }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

  /// Columns `idx` (in that order) regrouped under a new column split.
  BlockGrid select_columns(const std::vector<std::size_t>& idx, Split new_cols) const {
    if (new_cols.total() != idx.size()) fail(ErrorCode::ShapeMismatch, "column split does not match selection");
    BlockGrid out;
    out.rows_ = rows_;
    out.cols_ = new_cols;
    out.parity_ = parity_;
    out.data_.reserve(rows() * idx.size());
    for (std::size_t r = 0; r < rows(); ++r)
      for (auto c : idx) {
        if (c >= cols()) fail(ErrorCode::IndexOutOfRange, "column " + std::to_string(c + 1));
        out.data_.push_back((*this)(r, c));
      }
    return out;
  }

  template <class Fn>
  auto map(Fn&& fn) const {
    using U = decltype(fn(std::declval<const T&>()));
    BlockGrid<U> out(rows_, cols_, U{}, parity_);
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t c = 0; c < cols(); ++c) out(r, c) = fn((*this)(r, c));
    return out;
  }

  friend bool operator==(const BlockGrid& a, const BlockGrid& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.parity_ == b.parity_ && a.data_ == b.data_;
  }

 private:
  template <class>
  friend class BlockGrid;

  Split rows_;
  Split cols_;
  unsigned parity_ = 0;
  std::vector<T> data_;
};

/// Supermatrix entry: a super element or the formal odd unit 1v.
class Entry {
 public:
  Entry() = default;
  Entry(SuperElem v) : value_(std::move(v)) {}  // NOLINT: implicit by design of the grid API

  static Entry nu_one(std::size_t alpha, std::size_t beta) {
    Entry e{SuperElem(alpha, beta)};
    e.nu_one_ = true;
    return e;
  }

  bool is_nu_one() const { return nu_one_; }
  bool is_zero() const { return !nu_one_ && value_.is_zero(); }

  const SuperElem& value() const {
    if (nu_one_) fail(ErrorCode::NuOneSum, "formal 1v has no element value");
    return value_;
  }

  std::size_t alpha() const { return value_.alpha(); }
  std::size_t beta() const { return value_.beta(); }

  std::string to_string() const { return nu_one_ ? "1v" : value_.to_string(); }

  friend bool operator==(const Entry& a, const Entry& b) {
    if (a.nu_one_ || b.nu_one_) return a.nu_one_ == b.nu_one_;
    return a.value_ == b.value_;
  }

 private:
  bool nu_one_ = false;
  SuperElem value_;
};

using SMatrix = BlockGrid<Entry>;

namespace detail {
inline const NuStructure& need_nu(const NuStructure* nu) {
  if (nu == nullptr) fail(ErrorCode::ContextMismatch, "a 1v entry needs an odd involution");
  return *nu;
}
}  // namespace detail

/// Entry product: z.1v = nu(z), 1v.z = nu(z), 1v.1v = 1.
inline Entry entry_mul(const Entry& a, const Entry& b, const NuStructure* nu) {
  if (a.is_nu_one() && b.is_nu_one()) return SuperElem::one(a.alpha(), a.beta());
  if (b.is_nu_one()) return a.value().is_zero() ? a : Entry(detail::need_nu(nu).apply(a.value()));
  if (a.is_nu_one()) return b.value().is_zero() ? b : Entry(detail::need_nu(nu).apply(b.value()));
  return a.value() * b.value();
}

/// nu on an entry; nu(1v) = 1.
inline Entry entry_nu(const Entry& a, const NuStructure* nu) {
  if (a.is_nu_one()) return SuperElem::one(a.alpha(), a.beta());
  if (a.value().is_zero()) return a;
  return detail::need_nu(nu).apply(a.value());
}

/// a - b; a bare 1v cannot absorb nonzero element terms.
inline Entry entry_sub(const Entry& a, const Entry& b) {
  if (b.is_zero()) return a;
  if (a.is_nu_one() || b.is_nu_one()) fail(ErrorCode::NuOneSum, "1v in a sum with nonzero terms");
  return a.value() - b.value();
}

inline SMatrix smat_zero(Split rows, Split cols, std::size_t alpha, std::size_t beta) {
  return SMatrix(rows, cols, Entry(SuperElem(alpha, beta)));
}

inline SMatrix smat_identity(Split s, std::size_t alpha, std::size_t beta) {
  SMatrix m = smat_zero(s, s, alpha, beta);
  for (std::size_t i = 0; i < s.total(); ++i) m(i, i) = SuperElem::one(alpha, beta);
  return m;
}

/// Empty string when every entry sits in a slot of its own parity, otherwise
/// a description of the first offending slot.
inline std::string well_formed_violation(const SMatrix& a) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const Entry& e = a(r, c);
      const unsigned want = a.slot_parity(r, c);
      auto where = [&] { return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")"; };
      if (e.is_nu_one()) {
        if (want != 1) return "1v in even slot " + where();
        continue;
      }
      const Parity p = e.value().parity();
      if (p == Parity::Mixed) return "mixed-parity entry at " + where();
      if (!e.value().is_zero() && (p == Parity::Odd ? 1U : 0U) != want)
        return "entry " + e.to_string() + " has wrong parity at " + where();
    }
  return {};
}

inline void require_well_formed(const SMatrix& a, const char* op) {
  if (auto why = well_formed_violation(a); !why.empty()) fail(ErrorCode::ParityError, std::string(op) + ": " + why);
}

inline SMatrix smat_mul(const SMatrix& a, const SMatrix& b, const NuStructure* nu) {
  if (!(a.col_split() == b.row_split())) fail(ErrorCode::ShapeMismatch, "smat_mul: column split != row split");
  const bool from_a = a.rows() > 0 && a.cols() > 0;
  const bool from_b = b.rows() > 0 && b.cols() > 0;
  const std::size_t alpha = from_a ? a(0, 0).alpha() : from_b ? b(0, 0).alpha() : 0;
  const std::size_t beta = from_a ? a(0, 0).beta() : from_b ? b(0, 0).beta() : 0;
  SMatrix out = smat_zero(a.row_split(), b.col_split(), alpha, beta);
  out.set_parity(a.parity() + b.parity());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      SuperElem acc(alpha, beta);
      for (std::size_t t = 0; t < a.cols(); ++t) {
        const Entry& x = a(i, t);
        const Entry& y = b(t, j);
        if (x.is_zero() || y.is_zero()) continue;
        acc += entry_mul(x, y, nu).value();
      }
      out(i, j) = std::move(acc);
    }
  return out;
}

/// Entrywise nu; flips the parity of the matrix.
inline SMatrix smat_nu(const SMatrix& a, const NuStructure* nu) {
  SMatrix out = a.map([&](const Entry& e) { return entry_nu(e, nu); });
  out.set_parity(a.parity() + 1);
  return out;
}

struct InverseResult {
  SMatrix inverse;
  /// Product of the bodies of the element pivots; 1v pivots contribute 1.
  RatFunc certificate;
};

/// Gauss-Jordan inversion over the superalgebra. A pivot must be 1v or an even
/// element with nonzero body (generic invertibility); 1v pivots are normalised
/// by left-multiplying the row with 1v. The result is checked on both sides.
inline InverseResult smat_inv_certified(const SMatrix& a, const NuStructure* nu) {
  const std::size_t n = a.rows();
  if (n != a.cols()) fail(ErrorCode::ShapeMismatch, "smat_inv of a non-square supermatrix");
  if (n == 0) return {a, RatFunc()};
  const std::size_t alpha = a(0, 0).alpha();
  const std::size_t beta = a(0, 0).beta();

  std::vector<std::vector<Entry>> work(n), inv(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) work[r].push_back(a(r, c));
    for (std::size_t c = 0; c < n; ++c)
      inv[r].push_back(r == c ? Entry(SuperElem::one(alpha, beta)) : Entry(SuperElem(alpha, beta)));
  }
  auto scale_row = [&](std::size_t r, const Entry& s) {
    for (auto& e : work[r]) e = e.is_zero() ? e : entry_mul(s, e, nu);
    for (auto& e : inv[r]) e = e.is_zero() ? e : entry_mul(s, e, nu);
  };
  auto admissible = [](const Entry& e) {
    if (e.is_nu_one()) return true;
    const SuperElem& v = e.value();
    return v.parity() == Parity::Even && !v.body().is_zero();
  };

  RatFunc certificate = RatFunc::constant(alpha, 1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (admissible(work[r][c])) {
        piv = r;
        break;
      }
    if (piv == n) fail(ErrorCode::Singular, "no admissible pivot in column " + std::to_string(c + 1));
    std::swap(work[piv], work[c]);
    std::swap(inv[piv], inv[c]);
    const Entry pivot = work[c][c];
    if (pivot.is_nu_one()) {
      scale_row(c, pivot);
    } else {
      certificate *= pivot.value().body();
      scale_row(c, Entry(invert_even(pivot.value())));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || work[r][c].is_zero()) continue;
      if (work[r][c].is_nu_one()) {
        const Entry s = work[r][c];
        scale_row(r, s);
      }
      const Entry f = work[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (!work[c][j].is_zero()) work[r][j] = entry_sub(work[r][j], entry_mul(f, work[c][j], nu));
        if (!inv[c][j].is_zero()) inv[r][j] = entry_sub(inv[r][j], entry_mul(f, inv[c][j], nu));
      }
    }
  }

  SMatrix result = smat_zero(a.col_split(), a.row_split(), alpha, beta);
  result.set_parity(a.parity());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) result(r, c) = inv[r][c];

  if (!(smat_mul(a, result, nu) == smat_identity(a.row_split(), alpha, beta)) ||
      !(smat_mul(result, a, nu) == smat_identity(a.col_split(), alpha, beta)))
    fail(ErrorCode::InverseCheckFailed, "Gauss-Jordan result is not a two-sided inverse");
  return {std::move(result), std::move(certificate)};
}

inline SMatrix smat_inv(const SMatrix& a, const NuStructure* nu) { return smat_inv_certified(a, nu).inverse; }

// ---- structural operations shared by symbolic labels and computed matrices ----

/// Columns of a k|l x m|n grid indexed by the target's J (even side) and S (odd side).
template <class T>
BlockGrid<T> minor_M(const BlockGrid<T>& a, const ChartIndex& target) {
  const std::size_t m = a.col_split().even;
  for (auto j : target.I)
    if (j < 1 || j > m) fail(ErrorCode::IndexOutOfRange, "even index " + std::to_string(j));
  for (auto s : target.R)
    if (s < 1 || s > a.col_split().odd) fail(ErrorCode::IndexOutOfRange, "odd index " + std::to_string(s));
  return a.select_columns(target.columns(m), Split{target.p(), target.q()});
}

/// Minor positions [lo, hi) whose diagonal slot in the target's non-standard
/// identity holds 1v; these are the columns that cross the divider in M'.
inline std::pair<std::size_t, std::size_t> nu_one_columns(std::size_t k, const ChartIndex& target) {
  return target.p() >= k ? std::pair{k, target.p()} : std::pair{target.p(), k};
}

/// M'_{J|S}(A): the minor with every 1v-column of the target's non-standard
/// identity moved across the divider (even columns to the left edge of the
/// odd side, odd columns to the right edge of the even side) and nu applied
/// to its entries. Column order is unchanged; only the split moves to (k, l).
template <class T, class NuFn>
BlockGrid<T> m_prime(const BlockGrid<T>& a, const ChartIndex& target, NuFn&& nu_fn) {
  const Split rows = a.row_split();
  BlockGrid<T> minor = minor_M(a, target);
  if (target.p() == rows.even) return minor;
  const auto [lo, hi] = nu_one_columns(rows.even, target);
  std::vector<std::size_t> all(minor.cols());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  BlockGrid<T> out = minor.select_columns(all, Split{rows.even, rows.odd});
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = lo; c < hi; ++c) out(r, c) = nu_fn(out(r, c));
  return out;
}

inline SMatrix m_prime(const SMatrix& a, const ChartIndex& target, const NuStructure* nu) {
  return m_prime(a, target, [nu](const Entry& e) { return entry_nu(e, nu); });
}

/// A with the target's J u S columns removed; remaining columns keep order and side.
template <class T>
BlockGrid<T> d_omit(const BlockGrid<T>& a, const ChartIndex& target) {
  minor_M(a, target);  // range check
  const std::size_t m = a.col_split().even;
  const auto drop = target.columns(m);
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (std::find(drop.begin(), drop.end(), c) == drop.end()) keep.push_back(c);
  return a.select_columns(keep, Split{m - target.p(), a.col_split().odd - target.q()});
}

/// Square (k+l) x (p+q) grid: 1 on diagonal slots of even parity, 1v on odd ones.
template <class T>
BlockGrid<T> nonstd_identity_grid(std::size_t k, std::size_t l, const ChartIndex& index, const T& zero, const T& one,
                                  const T& nu_one) {
  if (index.p() + index.q() != k + l) fail(ErrorCode::BadIndex, index.to_string() + ": p+q != k+l");
  BlockGrid<T> g(Split{k, l}, Split{index.p(), index.q()}, zero);
  for (std::size_t i = 0; i < k + l; ++i) g(i, i) = g.slot_parity(i, i) == 0 ? one : nu_one;
  return g;
}

inline SMatrix nonstd_identity(const GrassSpec& space, const ChartIndex& index) {
  const std::size_t alpha = space.alpha(), beta = space.beta();
  return nonstd_identity_grid<Entry>(space.k, space.l, index, SuperElem(alpha, beta), SuperElem::one(alpha, beta),
                                     Entry::nu_one(alpha, beta));
}

/// Block layout: entries per row, '|' at the column divider, a dashed line
/// between even and odd rows. Columns are padded to a common width.
template <class T, class Fmt>
std::string render_grid(const BlockGrid<T>& g, Fmt&& fmt) {
  std::vector<std::vector<std::string>> cells(g.rows(), std::vector<std::string>(g.cols()));
  std::vector<std::size_t> width(g.cols(), 0);
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) {
      cells[r][c] = fmt(g(r, c));
      width[c] = std::max(width[c], cells[r][c].size());
    }
  std::string out;
  std::size_t line_len = 0;
  std::vector<std::string> lines;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < g.cols(); ++c) {
      if (c > 0) line += (c == g.col_split().even) ? " | " : "  ";
      else if (g.col_split().even == 0) line += "| ";
      line += cells[r][c] + std::string(width[c] - cells[r][c].size(), ' ');
    }
    if (g.cols() > 0 && g.col_split().odd == 0) line += " |";
    while (!line.empty() && line.back() == ' ') line.pop_back();
    line_len = std::max(line_len, line.size());
    lines.push_back(std::move(line));
  }
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (r == g.row_split().even && r > 0) out += std::string(line_len, '-') + "\n";
    out += lines[r] + "\n";
  }
  return out;
}

inline std::string render(const SMatrix& a) {
  return render_grid(a, [](const Entry& e) { return e.to_string(); });
}

}  // namespace nugrass
