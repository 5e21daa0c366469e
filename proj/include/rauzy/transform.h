#pragma once

#include <vector>

#include "rauzy/spectral.h"
#include "rauzy/substitution.h"
#include "rauzy/words.h"

namespace rauzy {

/// Rewrite the occurrences `selected` of letter `a` to the new letter
/// b = n + 1.
struct SplitSpec {
  Letter a = 0;
  std::vector<Occurrence> selected;
};

/// tau(i) = s(i) with every position in spec.selected rewritten to b, and
/// tau(b) = tau(a). Throws InvalidInput for an empty selection or one that is
/// not a subset of occ(s, a).
Substitution split(const Substitution& s, const SplitSpec& spec);

/// Maps the split letter b back to a; inverse of split on the letter level.
Substitution merge_split(const Substitution& t, Letter a);

/// (v_1, ..., v_n) -> (v_1, ..., v_n, v_a).
ComplexVector split_eigenvector(const ComplexVector& v, Letter a);
Eigen::VectorXd split_eigenvector(const Eigen::VectorXd& v, Letter a);

/// Spectral data of the split substitution, derived coordinatewise from the
/// parent (never re-solved). The multipliers are unchanged.
SpectralData split_spectral(const SpectralData& parent, Letter a);

/// rho_ij: j -> ij, k -> k otherwise; and its inverse j -> i^-1 j.
struct ElementaryAutomorphism {
  Letter i = 0, j = 0;
  FreeGroupMorphism forward;
  FreeGroupMorphism inverse;

  /// Incidence matrix of the forward map (identity plus e_i e_j^T).
  IntMatrix matrix() const;
};

/// Throws InvalidInput when i == j or a letter is outside 1..alphabet.
ElementaryAutomorphism elementary(int alphabet, Letter i, Letter j);

/// The unique c such that every occurrence (j;k) of b has k >= 2 and
/// t(j)_{k-1} = c. Throws PreconditionFailed listing the violations.
Letter preceding_letter(const Substitution& t, Letter b);

/// rho^-1 t rho, reduced; rho = rho_cb must satisfy the preceding-letter
/// condition. Throws PreconditionFailed if an image keeps an inverse letter.
Substitution conjugate(const Substitution& t, const ElementaryAutomorphism& rho);

/// rho^-1 t rho as a free group morphism, without the positivity check.
FreeGroupMorphism conjugate_morphism(const Substitution& t, const ElementaryAutomorphism& rho);

/// z = w M_rho, i.e. z_b = w_c + w_b and z_i = w_i otherwise.
ComplexVector conjugate_eigenvector(const ComplexVector& w, const ElementaryAutomorphism& rho);
Eigen::VectorXd conjugate_eigenvector(const Eigen::VectorXd& w, const ElementaryAutomorphism& rho);

SpectralData conjugate_spectral(const SpectralData& parent, const ElementaryAutomorphism& rho);

}  // namespace rauzy
