#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rauzy {

/// Letters are 1-based: the alphabet of size n is {1, ..., n}.
using Letter = int;

/// A word of the free monoid.
using Word = std::vector<Letter>;

/// Letter-count vector; entry i-1 counts letter i (signed for group words).
using AbelianVector = std::vector<std::int64_t>;

/// A word of the free group. Each syllable is a nonzero integer: +a stands
/// for the letter a, -a for its inverse a^-1.
struct SignedWord {
  std::vector<int> syllables;

  SignedWord() = default;
  explicit SignedWord(std::vector<int> s) : syllables(std::move(s)) {}

  static SignedWord from_word(const Word& w);

  bool empty() const { return syllables.empty(); }
  std::size_t size() const { return syllables.size(); }
  /// True when no inverse letter appears.
  bool is_positive() const;
  /// The positive word; throws InvalidInput when an inverse letter remains.
  Word to_word() const;
  SignedWord inverse() const;

  friend bool operator==(const SignedWord&, const SignedWord&) = default;
};

Word concat(const Word& u, const Word& v);
SignedWord concat(const SignedWord& u, const SignedWord& v);

/// Free reduction: cancels every adjacent a a^-1 / a^-1 a pair.
SignedWord reduce(const SignedWord& w);

AbelianVector abelianize(const Word& w, int alphabet);
AbelianVector abelianize(const SignedWord& w, int alphabet);

/// Non-erasing morphism of the free group on {1..n}, given by letter images.
class FreeGroupMorphism {
 public:
  FreeGroupMorphism(int alphabet, std::vector<SignedWord> images);

  static FreeGroupMorphism identity(int alphabet);

  int alphabet() const { return alphabet_; }
  const SignedWord& image(Letter a) const { return images_.at(a - 1); }
  const std::vector<SignedWord>& images() const { return images_; }

  friend bool operator==(const FreeGroupMorphism&, const FreeGroupMorphism&) = default;

 private:
  int alphabet_;
  std::vector<SignedWord> images_;
};

/// Image of w under f, freely reduced.
SignedWord apply_morphism(const FreeGroupMorphism& f, const SignedWord& w);

/// f o g, i.e. a -> f(g(a)), every image reduced.
FreeGroupMorphism compose(const FreeGroupMorphism& f, const FreeGroupMorphism& g);

/// "1213" for alphabets up to 9 letters, "1,2,13" otherwise.
std::string format_word(const Word& w, int alphabet);
/// Inverse letters are written "a^-1"; e.g. "21^-11^-1".
std::string format_signed_word(const SignedWord& w, int alphabet);

}  // namespace rauzy
