#pragma once

#include <optional>
#include <string>

#include "nugrass/atlas.hpp"
#include "nugrass/supermatrix.hpp"
#include "nugrass/transitions.hpp"

namespace nugrass {

/// eta_{source,target} in the row bases A^i: (M'_{target} A_{source})^-1 over the source chart.
struct BundleTransition {
  ChartIndex source;
  ChartIndex target;
  SMatrix matrix;
};

/// h_{first,second} := nu^{p(first)+p(second)} (M'_{first} A_{second})^-1, over the second chart.
struct HCocycle {
  ChartIndex first;
  ChartIndex second;
  SMatrix matrix;
  bool twisted = false;
};

inline SMatrix inverse_or_empty(const SMatrix& m, const NuStructure* nu, const std::string& what) {
  try {
    return smat_inv(m, nu);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Singular) fail(ErrorCode::EmptyOverlap, what + ": M' is generically singular");
    throw;
  }
}

inline BundleTransition eta_matrix(const Atlas& atlas, const ChartIndex& source, const ChartIndex& target) {
  const SMatrix z = m_prime(atlas.label(source).matrix, target, atlas.nu_ptr());
  return {source, target, inverse_or_empty(z, atlas.nu_ptr(), "eta " + source.to_string() + " -> " + target.to_string())};
}

inline HCocycle h_matrix(const Atlas& atlas, const ChartIndex& first, const ChartIndex& second) {
  const GrassSpec& space = atlas.space();
  const NuStructure* nu = atlas.nu_ptr();
  const SMatrix z = m_prime(atlas.label(second).matrix, first, nu);
  SMatrix inv = inverse_or_empty(z, nu, "h " + first.to_string() + ", " + second.to_string());
  const bool twisted = ((first.parity(space) + second.parity(space)) & 1U) != 0;
  if (twisted) inv = smat_nu(inv, nu);
  return {first, second, std::move(inv), twisted};
}

/// g* applied entrywise; 1v is a formal constant and stays put.
inline SMatrix pullback(const SMatrix& m, const TransitionMap& g) {
  Substitution sub(g);
  return m.map([&](const Entry& e) -> Entry {
    if (e.is_nu_one()) return e;
    return sub(e.value());
  });
}

/// First entry where two supermatrices differ, as text.
inline std::optional<std::string> matrix_defect(const SMatrix& actual, const SMatrix& expected) {
  if (actual.row_split() != expected.row_split() || actual.col_split() != expected.col_split())
    return std::string("shape differs");
  for (std::size_t r = 0; r < actual.rows(); ++r)
    for (std::size_t c = 0; c < actual.cols(); ++c)
      if (!(actual(r, c) == expected(r, c)))
        return "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + "): expected " +
               expected(r, c).to_string() + ", got " + actual(r, c).to_string();
  if (actual.parity() != expected.parity()) return std::string("matrix parity differs");
  return std::nullopt;
}

inline SMatrix identity_over(const GrassSpec& space) {
  return smat_identity(Split{space.k, space.l}, space.alpha(), space.beta());
}

/// T_{a,b} g*_{a,b}(T_{b,a}) = I over chart a.
inline std::optional<std::string> eta_pair_defect(const Atlas& atlas, const TransitionMap& g_ab) {
  const NuStructure* nu = atlas.nu_ptr();
  const SMatrix t_ab = eta_matrix(atlas, g_ab.source, g_ab.target).matrix;
  const SMatrix t_ba = eta_matrix(atlas, g_ab.target, g_ab.source).matrix;
  return matrix_defect(smat_mul(t_ab, pullback(t_ba, g_ab), nu), identity_over(atlas.space()));
}

/// g*_{a,b}(T_{b,c}) T_{a,b} = T_{a,c} over chart a.
inline std::optional<std::string> eta_triple_defect(const Atlas& atlas, const TransitionMap& g_ab,
                                                    const ChartIndex& c) {
  const NuStructure* nu = atlas.nu_ptr();
  const SMatrix t_ab = eta_matrix(atlas, g_ab.source, g_ab.target).matrix;
  const SMatrix t_bc = eta_matrix(atlas, g_ab.target, c).matrix;
  const SMatrix t_ac = eta_matrix(atlas, g_ab.source, c).matrix;
  return matrix_defect(smat_mul(pullback(t_bc, g_ab), t_ab, nu), t_ac);
}

/// g*_{a,b}(h_{a,b}) h_{b,a} = I over chart a.
inline std::optional<std::string> h_pair_defect(const Atlas& atlas, const TransitionMap& g_ab) {
  const NuStructure* nu = atlas.nu_ptr();
  const SMatrix h_ab = h_matrix(atlas, g_ab.source, g_ab.target).matrix;
  const SMatrix h_ba = h_matrix(atlas, g_ab.target, g_ab.source).matrix;
  return matrix_defect(smat_mul(pullback(h_ab, g_ab), h_ba, nu), identity_over(atlas.space()));
}

/// g*_{c,b}(h_{a,b}) h_{b,c} = h_{a,c} over chart c.
inline std::optional<std::string> h_triple_defect(const Atlas& atlas, const ChartIndex& a, const TransitionMap& g_cb) {
  const NuStructure* nu = atlas.nu_ptr();
  const ChartIndex& c = g_cb.source;
  const ChartIndex& b = g_cb.target;
  const SMatrix h_ab = h_matrix(atlas, a, b).matrix;
  const SMatrix h_bc = h_matrix(atlas, b, c).matrix;
  const SMatrix h_ac = h_matrix(atlas, a, c).matrix;
  return matrix_defect(smat_mul(pullback(h_ab, g_cb), h_bc, nu), h_ac);
}

}  // namespace nugrass
