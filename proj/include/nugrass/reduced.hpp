#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nugrass/atlas.hpp"
#include "nugrass/dense_matrix.hpp"
#include "nugrass/transitions.hpp"

namespace nugrass {

/// Body of a transition: target even generators as rational functions of the
/// source's even variables.
struct ReducedMap {
  ChartIndex source;
  ChartIndex target;
  std::vector<RatFunc> table;

  std::vector<Rat> operator()(const std::vector<Rat>& point) const {
    std::vector<Rat> out;
    out.reserve(table.size());
    for (const auto& f : table) out.push_back(f.eval_at(point));
    return out;
  }
};

inline ReducedMap reduced_transition(const TransitionMap& t) {
  ReducedMap r{t.source, t.target, {}};
  for (const auto& e : t.even) r.table.push_back(e.body());
  return r;
}

/// Chart change of G_k(R^m) x G_l(R^n) between standard charts, computed with
/// plain matrices over the source's even variables. Coordinates are numbered
/// column by column over the free columns, first the R^m block then R^n.
inline std::vector<RatFunc> classical_transition(const GrassSpec& space, const ChartIndex& source,
                                                 const ChartIndex& target) {
  if (!source.is_standard(space) || !target.is_standard(space))
    fail(ErrorCode::BadIndex, "classical chart change needs standard charts");
  const std::size_t alpha = space.alpha();
  const RatFunc zero(alpha), one = RatFunc::constant(alpha, 1);

  auto free_of = [](const std::vector<std::size_t>& fixed, std::size_t dim) {
    std::vector<std::size_t> out;
    for (std::size_t c = 1; c <= dim; ++c)
      if (std::find(fixed.begin(), fixed.end(), c) == fixed.end()) out.push_back(c - 1);
    return out;
  };
  auto zero_based = [](const std::vector<std::size_t>& v) {
    std::vector<std::size_t> out;
    for (auto i : v) out.push_back(i - 1);
    return out;
  };

  std::vector<RatFunc> result;
  std::size_t offset = 0;
  auto block = [&](std::size_t rows, std::size_t dim, const std::vector<std::size_t>& src_fixed,
                   const std::vector<std::size_t>& tgt_fixed) {
    DenseMatrix<RatFunc> p(rows, dim, zero);
    for (std::size_t r = 0; r < rows; ++r) p(r, src_fixed[r] - 1) = one;
    std::size_t var = offset;
    for (auto c : free_of(src_fixed, dim))
      for (std::size_t r = 0; r < rows; ++r) p(r, c) = RatFunc::variable(alpha, var++);
    offset = var;
    if (rows == 0) return;
    auto inv = p.columns(zero_based(tgt_fixed)).inverse(one);
    if (!inv) fail(ErrorCode::EmptyOverlap, "classical minor is singular");
    const DenseMatrix<RatFunc> q = *inv * p;
    for (auto c : free_of(tgt_fixed, dim))
      for (std::size_t r = 0; r < rows; ++r) result.push_back(q(r, c));
  };
  block(space.k, space.m, source.I, target.I);
  block(space.l, space.n, source.R, target.R);
  return result;
}

/// nu'' applied entrywise: even a -> body(a), odd a -> body(nu(a)), 1v -> 1.
inline DenseMatrix<RatFunc> nu_double_prime_matrix(const ChartLabel& label, const GrassSpec& space,
                                                   const NuStructure* nu) {
  const std::size_t alpha = space.alpha();
  const SMatrix& a = label.matrix;
  DenseMatrix<RatFunc> out(a.rows(), a.cols(), RatFunc(alpha));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      const Entry& e = a(r, c);
      if (e.is_nu_one()) {
        out(r, c) = RatFunc::constant(alpha, 1);
        continue;
      }
      const SuperElem& v = e.value();
      if (v.is_zero()) continue;
      switch (v.parity()) {
        case Parity::Even: out(r, c) = v.body(); break;
        case Parity::Odd: out(r, c) = nu_apply(detail::need_nu(nu), v).body(); break;
        case Parity::Mixed:
          fail(ErrorCode::MixedParityEntry, "label entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
      }
    }
  return out;
}

/// Chart index of G_{k+l}(R^{m+n}): k+l columns out of m+n, 1-based.
struct BigChartIndex {
  std::vector<std::size_t> Jtilde;

  static BigChartIndex associated(const ChartIndex& c, std::size_t m) {
    BigChartIndex b;
    for (auto i : c.I) b.Jtilde.push_back(i);
    for (auto s : c.R) b.Jtilde.push_back(m + s);
    return b;
  }

  std::vector<std::size_t> columns() const {
    std::vector<std::size_t> out;
    for (auto j : Jtilde) out.push_back(j - 1);
    return out;
  }

  /// Even part J (entries <= m) and odd part S (entries > m, shifted by -m).
  ChartIndex split(std::size_t m) const {
    ChartIndex c;
    for (auto j : Jtilde) (j <= m ? c.I : c.R).push_back(j <= m ? j : j - m);
    return c;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < Jtilde.size(); ++i) s += (i ? "," : "") + std::to_string(Jtilde[i]);
    return s + "}";
  }

  friend bool operator==(const BigChartIndex&, const BigChartIndex&) = default;
};

/// Every (k+l)-subset of 1..m+n in lexicographic order.
inline std::vector<BigChartIndex> enumerate_big_charts(const GrassSpec& space) {
  const std::size_t total = space.m + space.n, size = space.rank();
  std::vector<BigChartIndex> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t next) -> void {
    if (cur.size() == size) {
      out.push_back({cur});
      return;
    }
    for (std::size_t v = next; v + (size - cur.size()) <= total + 1; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

template <class F>
struct FieldUnits {
  F zero;
  F one;
};

inline FieldUnits<Rat> rat_units() { return {Rat(0), Rat(1)}; }
inline FieldUnits<RatFunc> ratfunc_units(std::size_t alpha) { return {RatFunc(alpha), RatFunc::constant(alpha, 1)}; }

inline std::vector<std::size_t> complement_columns(const std::vector<std::size_t>& cols, std::size_t total) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < total; ++c)
    if (std::find(cols.begin(), cols.end(), c) == cols.end()) out.push_back(c);
  return out;
}

/// D((M_cols A)^-1 A), or nullopt when the minor is singular.
template <class F>
std::optional<DenseMatrix<F>> normalize_at(const DenseMatrix<F>& a, const std::vector<std::size_t>& cols,
                                           const FieldUnits<F>& u) {
  auto inv = a.columns(cols).inverse(u.one);
  if (!inv) return std::nullopt;
  return (*inv * a).columns(complement_columns(cols, a.cols()));
}

/// {Y}_big: Y with identity columns inserted at the big index positions.
template <class F>
DenseMatrix<F> complete_big(const DenseMatrix<F>& y, const BigChartIndex& big, const FieldUnits<F>& u) {
  const std::size_t rows = y.rows(), total = y.cols() + rows;
  const auto cols = big.columns();
  DenseMatrix<F> full(rows, total, u.zero);
  for (std::size_t r = 0; r < rows; ++r) full(r, cols[r]) = u.one;
  const auto rest = complement_columns(cols, total);
  for (std::size_t j = 0; j < rest.size(); ++j)
    for (std::size_t r = 0; r < rows; ++r) full(r, rest[j]) = y(r, j);
  return full;
}

/// psi over the function field: D_big((M_big nu''A)^-1 nu''A).
inline std::optional<DenseMatrix<RatFunc>> psi_symbolic(const ChartLabel& label, const GrassSpec& space,
                                                        const BigChartIndex& big, const NuStructure* nu) {
  return normalize_at(nu_double_prime_matrix(label, space, nu), big.columns(), ratfunc_units(space.alpha()));
}

inline DenseMatrix<Rat> evaluate(const DenseMatrix<RatFunc>& m, const std::vector<Rat>& point) {
  return m.map(Rat(0), [&](const RatFunc& f) { return f.eval_at(point); });
}

/// psi at a point of the chart; SingularMinor when the big minor degenerates there.
inline DenseMatrix<Rat> psi_at(const ChartLabel& label, const GrassSpec& space, const BigChartIndex& big,
                               const NuStructure* nu, const std::vector<Rat>& point) {
  auto r = normalize_at(evaluate(nu_double_prime_matrix(label, space, nu), point), big.columns(), rat_units());
  if (!r) fail(ErrorCode::SingularMinor, "psi: minor at " + big.to_string() + " is singular");
  return *r;
}

/// Classical chart change of G_{k+l}(R^{m+n}) from big1 to big2.
template <class F>
DenseMatrix<F> theta(const BigChartIndex& big1, const BigChartIndex& big2, const DenseMatrix<F>& y,
                     const FieldUnits<F>& u) {
  auto r = normalize_at(complete_big(y, big1, u), big2.columns(), u);
  if (!r) fail(ErrorCode::SingularMinor, "theta: minor at " + big2.to_string() + " is singular");
  return *r;
}

/// chi: normalise {Y}_big at the chart's columns and read the x-slots.
template <class F>
std::vector<F> chi(const BigChartIndex& big, const ChartLabel& label, std::size_t m, const DenseMatrix<F>& y,
                   const FieldUnits<F>& u) {
  auto d = normalize_at(complete_big(y, big, u), label.index.columns(m), u);
  if (!d) fail(ErrorCode::SingularMinor, "chi: minor at " + label.index.to_string() + " is singular");
  std::vector<F> out;
  for (const auto& s : label.slots)
    if (s.gen.kind == GenKind::X) {
      if (out.size() < s.gen.id) out.resize(s.gen.id, u.zero);
      out[s.gen.id - 1] = (*d)(s.row, s.dcol);
    }
  return out;
}

/// Lambda(P, Q): block-diagonal representative of pi1(P) + pi2(Q).
inline DenseMatrix<Rat> lambda_embed(const DenseMatrix<Rat>& p, const DenseMatrix<Rat>& q) {
  DenseMatrix<Rat> out(p.rows() + q.rows(), p.cols() + q.cols(), Rat(0));
  for (std::size_t r = 0; r < p.rows(); ++r)
    for (std::size_t c = 0; c < p.cols(); ++c) out(r, c) = p(r, c);
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c) out(p.rows() + r, p.cols() + c) = q(r, c);
  return out;
}

/// Row space of a full-rank (k+l) x (m+n) matrix splits as (k-plane in R^m) + (l-plane in R^n).
inline bool in_lambda_image(const DenseMatrix<Rat>& full, std::size_t k, std::size_t l, std::size_t m) {
  std::vector<std::size_t> first, last;
  for (std::size_t c = 0; c < full.cols(); ++c) (c < m ? first : last).push_back(c);
  return full.rank() == k + l && full.columns(first).rank() == k && full.columns(last).rank() == l;
}

inline bool same_row_space(const DenseMatrix<Rat>& a, const DenseMatrix<Rat>& b) {
  if (a.cols() != b.cols()) return false;
  DenseMatrix<Rat> stacked(a.rows() + b.rows(), a.cols(), Rat(0));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) stacked(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) stacked(a.rows() + r, c) = b(r, c);
  const std::size_t ra = a.rank();
  return ra == b.rank() && ra == stacked.rank();
}

inline std::string render(const DenseMatrix<Rat>& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + m(r, c).get_str();
    s += "]";
  }
  return s + "]";
}

inline std::string render_point(const std::vector<Rat>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].get_str();
  return s + ")";
}

/// Seeded rational points: numerators in [-10, 10], denominators in [1, 7].
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : rng_(seed) {}

  Rat next() {
    const long num = static_cast<long>(rng_() % 21) - 10;
    const long den = static_cast<long>(rng_() % 7) + 1;
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  std::vector<Rat> point(std::size_t dim) {
    std::vector<Rat> p;
    p.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) p.push_back(next());
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

/// Deterministic per-item seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (a * 1000003ULL + b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct SampleReport {
  std::size_t tested = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::optional<std::string> witness;  // first counterexample

  bool ok() const { return passed == tested; }
};

/// theta_{bigA,bigB}(psi_A(pt)) = psi_B(g~(pt)) at seeded points of chart A.
inline SampleReport check_diagram(const Atlas& atlas, const TransitionMap& g, const BigChartIndex& big_a,
                                  const BigChartIndex& big_b, std::size_t samples, std::uint64_t seed) {
  const GrassSpec& space = atlas.space();
  const NuStructure* nu = atlas.nu_ptr();
  const ChartLabel& la = atlas.label(g.source);
  const ChartLabel& lb = atlas.label(g.target);
  const ReducedMap gt = reduced_transition(g);
  const DenseMatrix<RatFunc> nu_a = nu_double_prime_matrix(la, space, nu);
  const DenseMatrix<RatFunc> nu_b = nu_double_prime_matrix(lb, space, nu);
  PointSampler sampler(seed);
  SampleReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::vector<Rat> pt = sampler.point(space.alpha());
    std::optional<DenseMatrix<Rat>> lhs, rhs;
    std::vector<Rat> image;
    try {
      auto psi_a = normalize_at(evaluate(nu_a, pt), big_a.columns(), rat_units());
      if (psi_a) lhs = normalize_at(complete_big(*psi_a, big_a, rat_units()), big_b.columns(), rat_units());
      image = gt(pt);
      rhs = normalize_at(evaluate(nu_b, image), big_b.columns(), rat_units());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PoleAtPoint) throw;
    }
    if (!lhs || !rhs) {
      ++rep.skipped;
      continue;
    }
    ++rep.tested;
    if (*lhs == *rhs) {
      ++rep.passed;
    } else if (!rep.witness) {
      rep.witness = "point " + render_point(pt) + ": theta(psi_A) = " + render(*lhs) + ", psi_B(g~) = " +
                    render(*rhs) + " at g~(point) = " + render_point(image);
    }
  }
  return rep;
}

/// psi(pt) lies in the image of Lambda at seeded points of a chart.
inline SampleReport check_lambda_image(const Atlas& atlas, const ChartIndex& chart, const BigChartIndex& big,
                                       std::size_t samples, std::uint64_t seed) {
  const GrassSpec& space = atlas.space();
  const DenseMatrix<RatFunc> nu_a = nu_double_prime_matrix(atlas.label(chart), space, atlas.nu_ptr());
  PointSampler sampler(seed);
  SampleReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::vector<Rat> pt = sampler.point(space.alpha());
    auto y = normalize_at(evaluate(nu_a, pt), big.columns(), rat_units());
    if (!y) {
      ++rep.skipped;
      continue;
    }
    ++rep.tested;
    const DenseMatrix<Rat> full = complete_big(*y, big, rat_units());
    if (in_lambda_image(full, space.k, space.l, space.m)) {
      ++rep.passed;
    } else if (!rep.witness) {
      rep.witness = "point " + render_point(pt) + ": psi = " + render(full) + " has no block-split row space";
    }
  }
  return rep;
}

/// chi o psi = id over the function field, for every big chart with a generically
/// invertible minor. Returns the first big chart that breaks it.
inline std::optional<std::string> chi_psi_defect(const Atlas& atlas, const ChartIndex& chart) {
  const GrassSpec& space = atlas.space();
  const ChartLabel& label = atlas.label(chart);
  const auto u = ratfunc_units(space.alpha());
  for (const auto& big : enumerate_big_charts(space)) {
    auto y = psi_symbolic(label, space, big, atlas.nu_ptr());
    if (!y) continue;
    std::vector<RatFunc> back;
    try {
      back = chi(big, label, space.m, *y, u);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SingularMinor) throw;
      return "big chart " + big.to_string() + ": chi minor singular";
    }
    for (std::size_t i = 0; i < back.size(); ++i)
      if (!(back[i] == RatFunc::variable(space.alpha(), i)))
        return "big chart " + big.to_string() + ": x" + std::to_string(i + 1) + " -> " + back[i].to_string();
  }
  return std::nullopt;
}

/// Body of g* against the classical chart change; first differing coordinate if any.
inline std::optional<std::string> gtilde_defect(const GrassSpec& space, const TransitionMap& g) {
  const ReducedMap r = reduced_transition(g);
  const auto oracle = classical_transition(space, g.source, g.target);
  for (std::size_t i = 0; i < oracle.size(); ++i)
    if (!(r.table[i] == oracle[i]))
      return "x" + std::to_string(i + 1) + ": body(g*) = " + r.table[i].to_string() + ", classical = " +
             oracle[i].to_string();
  return std::nullopt;
}

}  // namespace nugrass
