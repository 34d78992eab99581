#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nugrass/chart_index.hpp"
#include "nugrass/grassmann.hpp"
#include "nugrass/supermatrix.hpp"

namespace nugrass {

enum class GenKind { X, E };

/// A coordinate of a chart: x_id (even) or e_id (odd), 1-based.
struct GenRef {
  GenKind kind = GenKind::X;
  std::size_t id = 0;

  std::string name() const { return (kind == GenKind::X ? "x" : "e") + std::to_string(id); }
  friend bool operator==(const GenRef&, const GenRef&) = default;
};

/// Symbolic label entry with its display text.
struct LabelEntry {
  enum class Kind { Zero, One, NuOne, Gen };
  Kind kind = Kind::Zero;
  GenRef gen{};
  bool wrapped = false;  // entry is nu(...) of the base value

  static LabelEntry zero() { return {}; }
  static LabelEntry one() { return {Kind::One, {}, false}; }
  static LabelEntry nu_one() { return {Kind::NuOne, {}, false}; }
  static LabelEntry generator(GenRef g, bool wrapped) { return {Kind::Gen, g, wrapped}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Zero: return "0";
      case Kind::One: return wrapped ? "v(1)" : "1";
      case Kind::NuOne: return "1v";
      case Kind::Gen: return wrapped ? "v(" + gen.name() + ")" : gen.name();
    }
    return "?";
  }

  friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
};

/// nu on symbolic entries: nu(1v) = 1, nu(nu(a)) = a, nu(0) = 0.
inline LabelEntry label_nu(const LabelEntry& e) {
  switch (e.kind) {
    case LabelEntry::Kind::Zero: return e;
    case LabelEntry::Kind::NuOne: return LabelEntry::one();
    default: {
      LabelEntry r = e;
      r.wrapped = !r.wrapped;
      return r;
    }
  }
}

using LabelGrid = BlockGrid<LabelEntry>;

inline std::string render(const LabelGrid& g) {
  return render_grid(g, [](const LabelEntry& e) { return e.to_string(); });
}

/// Where a generator sits in a label.
struct Slot {
  std::size_t row = 0;
  std::size_t col = 0;   // absolute column in the label
  std::size_t dcol = 0;  // column inside D_{I|R}(A_{I|R})
  GenRef gen;
  bool wrapped = false;
};

struct ChartLabel {
  ChartIndex index;
  LabelGrid symbolic;
  SMatrix matrix;
  std::vector<Slot> slots;  // in generator order
  std::vector<GenRef> order;

  const Slot& slot_of(GenRef g) const {
    for (const auto& s : slots)
      if (s.gen == g) return s;
    fail(ErrorCode::IndexOutOfRange, "generator " + g.name() + " not in label");
  }

  std::string generator_order_string() const {
    std::string s;
    for (std::size_t i = 0; i < order.size(); ++i) s += (i ? ", " : "") + order[i].name();
    return s;
  }
};

/// All p|q-indices with p+q = k+l: p descending, then lexicographic in (I, R).
inline std::vector<ChartIndex> enumerate_charts(const GrassSpec& space) {
  space.validate();
  auto subsets = [](std::size_t universe, std::size_t size) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t next) -> void {
      if (cur.size() == size) {
        out.push_back(cur);
        return;
      }
      for (std::size_t v = next; v <= universe; ++v) {
        if (universe - v + 1 < size - cur.size()) break;
        cur.push_back(v);
        self(self, v + 1);
        cur.pop_back();
      }
    };
    rec(rec, 1);
    return out;
  };
  const std::size_t total = space.rank();
  std::vector<ChartIndex> charts;
  const std::size_t p_hi = std::min(total, space.m);
  const std::size_t p_lo = total > space.n ? total - space.n : 0;
  for (std::size_t p = p_hi + 1; p-- > p_lo;) {
    for (auto& I : subsets(space.m, p))
      for (auto& R : subsets(space.n, total - p)) charts.push_back(ChartIndex{I, R});
  }
  return charts;
}

/// Evaluates a symbolic entry as a supermatrix entry over the chart algebra.
inline Entry evaluate(const LabelEntry& e, std::size_t alpha, std::size_t beta, const NuStructure* nu) {
  Entry base;
  switch (e.kind) {
    case LabelEntry::Kind::Zero: return SuperElem(alpha, beta);
    case LabelEntry::Kind::NuOne: return Entry::nu_one(alpha, beta);
    case LabelEntry::Kind::One: base = SuperElem::one(alpha, beta); break;
    case LabelEntry::Kind::Gen:
      base = e.gen.kind == GenKind::X ? SuperElem::even_var(alpha, beta, e.gen.id - 1)
                                      : SuperElem::odd_gen(alpha, beta, e.gen.id - 1);
      break;
  }
  return e.wrapped ? entry_nu(base, nu) : base;
}

inline SMatrix evaluate(const LabelGrid& g, std::size_t alpha, std::size_t beta, const NuStructure* nu) {
  return g.map([&](const LabelEntry& e) { return evaluate(e, alpha, beta, nu); });
}

/// Label A_{I|R}: the non-standard identity on the I u R columns; the other
/// columns, left to right, carry the even pattern (x over e) for the first
/// m-k of them and the odd pattern (e over x) for the rest. Generators of each
/// kind are numbered column by column, top to bottom, and an entry is wrapped
/// in nu when its pattern side differs from the side of the divider it sits on.
inline ChartLabel build_label(const GrassSpec& space, const ChartIndex& index, const NuStructure* nu) {
  space.validate();
  index.validate(space);
  const std::size_t k = space.k, l = space.l, m = space.m, n = space.n;
  LabelGrid grid(Split{k, l}, Split{m, n}, LabelEntry::zero());

  const auto minor_cols = index.columns(m);
  const LabelGrid ident =
      nonstd_identity_grid(k, l, index, LabelEntry::zero(), LabelEntry::one(), LabelEntry::nu_one());
  for (std::size_t r = 0; r < k + l; ++r)
    for (std::size_t c = 0; c < minor_cols.size(); ++c) grid(r, minor_cols[c]) = ident(r, c);

  ChartLabel label;
  label.index = index;
  std::size_t next_x = 1, next_e = 1, dcol = 0;
  for (std::size_t col = 0; col < m + n; ++col) {
    if (std::find(minor_cols.begin(), minor_cols.end(), col) != minor_cols.end()) continue;
    const bool even_pattern = dcol < m - k;
    const bool even_side = col < m;
    for (std::size_t r = 0; r < k + l; ++r) {
      const bool is_x = (r < k) == even_pattern;
      const GenRef g{is_x ? GenKind::X : GenKind::E, is_x ? next_x++ : next_e++};
      const bool wrapped = even_pattern != even_side;
      grid(r, col) = LabelEntry::generator(g, wrapped);
      label.slots.push_back(Slot{r, col, dcol, g, wrapped});
      label.order.push_back(g);
    }
    ++dcol;
  }
  label.symbolic = std::move(grid);
  label.matrix = evaluate(label.symbolic, space.alpha(), space.beta(), nu);
  require_well_formed(label.matrix, "build_label");
  return label;
}

/// Chart labels of a space, built once and shared read-only.
class Atlas {
 public:
  Atlas(const GrassSpec& space, std::optional<NuStructure> nu) : space_(space), nu_(std::move(nu)) {
    space_.validate();
    if (!nu_ && space_.beta() > 0) nu_ = NuStructure::canonical(space_.beta());
    charts_ = enumerate_charts(space_);
    for (const auto& c : charts_) labels_.push_back(build_label(space_, c, nu_ptr()));
  }

  explicit Atlas(const GrassSpec& space) : Atlas(space, std::nullopt) {}

  const GrassSpec& space() const { return space_; }
  const NuStructure* nu_ptr() const { return nu_ ? &*nu_ : nullptr; }
  const std::vector<ChartIndex>& charts() const { return charts_; }
  std::size_t size() const { return charts_.size(); }

  std::size_t position(const ChartIndex& c) const {
    for (std::size_t i = 0; i < charts_.size(); ++i)
      if (charts_[i] == c) return i;
    fail(ErrorCode::BadIndex, c.to_string() + " is not a chart of " + space_.to_string());
  }

  const ChartLabel& label(const ChartIndex& c) const { return labels_[position(c)]; }
  const ChartLabel& label_at(std::size_t i) const { return labels_.at(i); }

  std::vector<std::size_t> standard_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < charts_.size(); ++i)
      if (charts_[i].is_standard(space_)) out.push_back(i);
    return out;
  }

  std::string nu_summary() const { return nu_ ? nu_->summary() : "none (beta = 0)"; }

 private:
  GrassSpec space_;
  std::optional<NuStructure> nu_;
  std::vector<ChartIndex> charts_;
  std::vector<ChartLabel> labels_;
};

}  // namespace nugrass
