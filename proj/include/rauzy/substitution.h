#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rauzy/words.h"

namespace rauzy {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Non-erasing morphism of the free monoid on {1..n}.
class Substitution {
 public:
  Substitution(int alphabet, std::vector<Word> images);

  static Substitution identity(int alphabet);
  /// Throws InvalidInput when some image contains an inverse letter.
  static Substitution from_morphism(const FreeGroupMorphism& f);

  int alphabet() const { return static_cast<int>(images_.size()); }
  const Word& operator()(Letter a) const { return images_.at(a - 1); }
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const;
  FreeGroupMorphism as_morphism() const;
  /// Sum of image lengths.
  std::size_t total_length() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::vector<Word> images_;
};

/// Position k (1-based) in the image of letter j.
struct Occurrence {
  Letter j = 0;
  int k = 0;

  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

IntMatrix incidence_matrix(const Substitution& s);

bool is_primitive(const IntMatrix& m);
bool is_primitive(const Substitution& s);

/// Exact determinant (fraction-free Bareiss elimination).
std::int64_t determinant(const IntMatrix& m);
bool is_unimodular(const Substitution& s);

/// Monic characteristic polynomial det(xI - M), coefficients from the
/// leading one down to the constant term. Exact (Faddeev-LeVerrier).
std::vector<std::int64_t> char_poly(const IntMatrix& m);
std::vector<std::int64_t> char_poly(const Substitution& s);

IntMatrix matrix_power(const IntMatrix& m, int exponent);

/// f o g as substitutions: a -> f(g(a)).
Substitution compose(const Substitution& f, const Substitution& g);
/// N-fold composition, N >= 1.
Substitution power(const Substitution& s, int exponent);

/// Every (j;k) with s(j)_k = i, sorted by j then k.
std::vector<Occurrence> occurrences(const Substitution& s, Letter i);

struct PeriodicSeed {
  Letter letter = 0;
  int period = 0;

  friend bool operator==(const PeriodicSeed&, const PeriodicSeed&) = default;
};

/// Seed of a periodic point found on the first-letter map a -> s(a)_1.
/// Prefers the shortest cycle, then the smallest letter on it; throws
/// PreconditionFailed when no cycle letter has growing iterates.
PeriodicSeed periodic_seed(const Substitution& s);

/// First m letters of the periodic point of s^period starting with the seed.
Word prefix_stream(const Substitution& s, PeriodicSeed seed, std::size_t m);

struct CoincidenceWitness {
  Letter j1 = 0, j2 = 0;
  int depth = 0;       ///< power k of s
  Letter letter = 0;   ///< the coinciding letter i
  std::size_t pos1 = 0, pos2 = 0;  ///< 1-based positions of i in s^k(j1), s^k(j2)
  bool by_prefix = true;           ///< prefixes (else suffixes) have equal Abelianization
};

struct CoincidenceResult {
  /// True when every pair has a witness; false means inconclusive at the
  /// searched depth, not a disproof.
  bool holds = false;
  int max_depth = 0;
  std::vector<CoincidenceWitness> witnesses;
  std::vector<std::pair<Letter, Letter>> unresolved;

  /// Deepest witness used, i.e. the depth at which the condition was settled.
  int depth() const {
    int d = 0;
    for (const auto& w : witnesses) d = std::max(d, w.depth);
    return d;
  }
};

constexpr int kDefaultCoincidenceDepth = 8;

CoincidenceResult strong_coincidence(const Substitution& s, int max_depth = kDefaultCoincidenceDepth);

}  // namespace rauzy
