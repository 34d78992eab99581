#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nugrass/atlas.hpp"
#include "nugrass/supermatrix.hpp"

namespace nugrass {

/// g*_{source,target}: images of the target chart's generators as super
/// elements over the source chart.
struct TransitionMap {
  ChartIndex source;
  ChartIndex target;
  std::vector<SuperElem> even;  // x1..x_alpha of the target
  std::vector<SuperElem> odd;   // e1..e_beta of the target
  RatFunc domain_certificate;   // nonvanishing locus bounds U_{source,target}

  const SuperElem& image(GenRef g) const { return g.kind == GenKind::X ? even.at(g.id - 1) : odd.at(g.id - 1); }
  SuperElem& image(GenRef g) { return g.kind == GenKind::X ? even.at(g.id - 1) : odd.at(g.id - 1); }
};

inline TransitionMap identity_map(const GrassSpec& space, const ChartIndex& chart) {
  const std::size_t alpha = space.alpha(), beta = space.beta();
  TransitionMap t{chart, chart, {}, {}, RatFunc::constant(alpha, 1)};
  for (std::size_t i = 0; i < alpha; ++i) t.even.push_back(SuperElem::even_var(alpha, beta, i));
  for (std::size_t j = 0; j < beta; ++j) t.odd.push_back(SuperElem::odd_gen(alpha, beta, j));
  return t;
}

/// Solves the pasting equation D_{J|S}((M'_{J|S} A_{I|R})^-1 A_{I|R}) = D_{J|S} A_{J|S}
/// for the target generators. A slot holding nu(g) yields g = nu(entry).
inline TransitionMap compute_transition(const Atlas& atlas, const ChartIndex& source, const ChartIndex& target) {
  const GrassSpec& space = atlas.space();
  const NuStructure* nu = atlas.nu_ptr();
  const ChartLabel& src = atlas.label(source);
  const ChartLabel& tgt = atlas.label(target);

  const SMatrix z = m_prime(src.matrix, target, nu);
  InverseResult inv;
  try {
    inv = smat_inv_certified(z, nu);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular)
      fail(ErrorCode::EmptyOverlap, source.to_string() + " -> " + target.to_string() + ": M' is generically singular");
    throw;
  }
  const SMatrix solved = d_omit(smat_mul(inv.inverse, src.matrix, nu), target);

  TransitionMap t{source, target, {}, {}, inv.certificate};
  t.even.assign(space.alpha(), SuperElem(space.alpha(), space.beta()));
  t.odd.assign(space.beta(), SuperElem(space.alpha(), space.beta()));
  for (const Slot& s : tgt.slots) {
    const Entry& e = solved(s.row, s.dcol);
    SuperElem v = s.wrapped ? entry_nu(e, nu).value() : e.value();
    const Parity want = s.gen.kind == GenKind::X ? Parity::Even : Parity::Odd;
    if (!v.is_zero() && v.parity() != want)
      fail(ErrorCode::ParityError, "image of " + s.gen.name() + " is " + std::string(to_string(v.parity())));
    t.image(s.gen) = std::move(v);
  }
  return t;
}

/// Ring morphism defined by a transition table, applied to expressions over
/// its target chart. Powers and inverted denominators are cached per instance.
class Substitution {
 public:
  explicit Substitution(const TransitionMap& map) : map_(&map) {}

  SuperElem operator()(const SuperElem& expr) {
    const std::size_t alpha = expr.alpha(), beta = expr.beta();
    SuperElem out(alpha, beta);
    for (const auto& [mask, coeff] : expr.terms()) {
      SuperElem v = rational(coeff);
      for (OddMask rest = mask; rest != 0; rest &= rest - 1) v = v * map_->odd.at(std::countr_zero(rest));
      out += v;
    }
    return out;
  }

  /// Image of a rational function in the target's even coordinates.
  SuperElem rational(const RatFunc& f) {
    SuperElem num = polynomial(f.num());
    if (f.den().is_one()) return num;
    const std::string key = f.den().to_string();
    auto it = inverted_.find(key);
    if (it == inverted_.end()) {
      SuperElem den = polynomial(f.den());
      if (den.body().is_zero())
        fail(ErrorCode::NonInvertibleDenominator, "denominator " + key + " has identically zero body after substitution");
      it = inverted_.emplace(key, invert_even(den)).first;
    }
    return num * it->second;
  }

  SuperElem polynomial(const Poly& p) {
    const std::size_t alpha = map_->even.empty() ? p.nvars() : map_->even.front().alpha();
    const std::size_t beta = map_->even.empty() ? 0 : map_->even.front().beta();
    SuperElem acc(alpha, beta);
    for (const auto& t : p.terms()) {
      SuperElem term = SuperElem::constant(alpha, beta, t.coeff);
      for (std::size_t i = 0; i < p.nvars(); ++i)
        if (t.mono.exp[i] > 0) term = term * power(i, t.mono.exp[i]);
      acc += term;
    }
    return acc;
  }

 private:
  const SuperElem& power(std::size_t var, std::size_t e) {
    if (powers_.size() <= var) powers_.resize(var + 1);
    auto& cache = powers_[var];
    if (cache.empty()) cache.push_back(map_->even.at(var));
    while (cache.size() < e) cache.push_back(cache.back() * map_->even.at(var));
    return cache[e - 1];
  }

  const TransitionMap* map_;
  std::vector<std::vector<SuperElem>> powers_;
  std::map<std::string, SuperElem> inverted_;
};

inline SuperElem substitute(const SuperElem& expr, const TransitionMap& map) { return Substitution(map)(expr); }

/// inner* after outer*: outer.target generators expressed over inner.source.
inline TransitionMap compose(const TransitionMap& outer, const TransitionMap& inner) {
  if (!(outer.source == inner.target))
    fail(ErrorCode::BadIndex, "compose: outer source " + outer.source.to_string() + " != inner target " +
                                  inner.target.to_string());
  Substitution sub(inner);
  TransitionMap r{inner.source, outer.target, {}, {}, {}};
  for (const auto& e : outer.even) r.even.push_back(sub(e));
  for (const auto& e : outer.odd) r.odd.push_back(sub(e));
  r.domain_certificate = inner.domain_certificate * sub.rational(outer.domain_certificate).body();
  return r;
}

struct Mismatch {
  GenRef gen;
  std::string expected;
  std::string actual;
};

/// First generator whose image differs from `expected`'s, if any.
inline std::optional<Mismatch> first_difference(const TransitionMap& actual, const TransitionMap& expected) {
  for (std::size_t i = 0; i < expected.even.size(); ++i)
    if (!(actual.even[i] == expected.even[i]))
      return Mismatch{{GenKind::X, i + 1}, expected.even[i].to_string(), actual.even[i].to_string()};
  for (std::size_t j = 0; j < expected.odd.size(); ++j)
    if (!(actual.odd[j] == expected.odd[j]))
      return Mismatch{{GenKind::E, j + 1}, expected.odd[j].to_string(), actual.odd[j].to_string()};
  return std::nullopt;
}

inline std::optional<Mismatch> identity_defect(const GrassSpec& space, const TransitionMap& t) {
  return first_difference(t, identity_map(space, t.target));
}

/// Transition maps of an atlas, computed on demand and memoised. Empty
/// generic overlaps are remembered as such.
class TransitionCache {
 public:
  explicit TransitionCache(const Atlas& atlas)
      : atlas_(&atlas), slots_(atlas.size() * atlas.size()), state_(atlas.size() * atlas.size(), 0) {}

  const Atlas& atlas() const { return *atlas_; }

  /// nullptr when the generic overlap is empty.
  const TransitionMap* get(std::size_t a, std::size_t b) {
    const std::size_t key = a * atlas_->size() + b;
    if (state_[key] == 0) {
      try {
        slots_[key] = compute_transition(*atlas_, atlas_->charts()[a], atlas_->charts()[b]);
        state_[key] = 1;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyOverlap) throw;
        state_[key] = 2;
      }
    }
    return state_[key] == 1 ? &*slots_[key] : nullptr;
  }

 private:
  const Atlas* atlas_;
  std::vector<std::optional<TransitionMap>> slots_;
  std::vector<int> state_;
};

}  // namespace nugrass
