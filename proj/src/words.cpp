#include "rauzy/words.h"

#include <cstdlib>

#include "rauzy/error.h"

namespace rauzy {

SignedWord SignedWord::from_word(const Word& w) {
  return SignedWord(std::vector<int>(w.begin(), w.end()));
}

bool SignedWord::is_positive() const {
  for (int s : syllables)
    if (s < 0) return false;
  return true;
}

Word SignedWord::to_word() const {
  if (!is_positive()) throw InvalidInput("signed word contains an inverse letter");
  return Word(syllables.begin(), syllables.end());
}

SignedWord SignedWord::inverse() const {
  SignedWord out;
  out.syllables.reserve(syllables.size());
  for (auto it = syllables.rbegin(); it != syllables.rend(); ++it) out.syllables.push_back(-*it);
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

SignedWord concat(const SignedWord& u, const SignedWord& v) {
  std::vector<int> out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.syllables.begin(), u.syllables.end());
  out.insert(out.end(), v.syllables.begin(), v.syllables.end());
  return SignedWord(std::move(out));
}

SignedWord reduce(const SignedWord& w) {
  // Single left-to-right pass with a stack yields the free normal form.
  std::vector<int> stack;
  stack.reserve(w.size());
  for (int s : w.syllables) {
    if (!stack.empty() && stack.back() == -s)
      stack.pop_back();
    else
      stack.push_back(s);
  }
  return SignedWord(std::move(stack));
}

AbelianVector abelianize(const Word& w, int alphabet) {
  AbelianVector v(alphabet, 0);
  for (Letter a : w) {
    if (a < 1 || a > alphabet) throw InvalidInput("letter out of alphabet");
    ++v[a - 1];
  }
  return v;
}

AbelianVector abelianize(const SignedWord& w, int alphabet) {
  AbelianVector v(alphabet, 0);
  for (int s : w.syllables) {
    const int a = std::abs(s);
    if (a < 1 || a > alphabet) throw InvalidInput("letter out of alphabet");
    v[a - 1] += s > 0 ? 1 : -1;
  }
  return v;
}

FreeGroupMorphism::FreeGroupMorphism(int alphabet, std::vector<SignedWord> images)
    : alphabet_(alphabet), images_(std::move(images)) {
  if (alphabet_ < 1) throw InvalidInput("alphabet must be nonempty");
  if (static_cast<int>(images_.size()) != alphabet_)
    throw InvalidInput("morphism needs exactly one image per letter");
  for (const auto& img : images_) {
    if (img.empty()) throw InvalidInput("morphism image is empty (erasing)");
    for (int s : img.syllables)
      if (s == 0 || std::abs(s) > alphabet_) throw InvalidInput("image letter out of alphabet");
  }
}

FreeGroupMorphism FreeGroupMorphism::identity(int alphabet) {
  std::vector<SignedWord> images;
  for (Letter a = 1; a <= alphabet; ++a) images.push_back(SignedWord({a}));
  return FreeGroupMorphism(alphabet, std::move(images));
}

SignedWord apply_morphism(const FreeGroupMorphism& f, const SignedWord& w) {
  std::vector<int> out;
  for (int s : w.syllables) {
    const int a = std::abs(s);
    if (a < 1 || a > f.alphabet()) throw InvalidInput("letter out of morphism alphabet");
    const auto& img = f.image(a).syllables;
    if (s > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
    }
  }
  return reduce(SignedWord(std::move(out)));
}

FreeGroupMorphism compose(const FreeGroupMorphism& f, const FreeGroupMorphism& g) {
  if (f.alphabet() != g.alphabet()) throw InvalidInput("composing morphisms over different alphabets");
  std::vector<SignedWord> images;
  images.reserve(g.alphabet());
  for (const auto& img : g.images()) {
    auto r = apply_morphism(f, img);
    if (r.empty()) throw InvalidInput("composition erases a letter");
    images.push_back(std::move(r));
  }
  return FreeGroupMorphism(f.alphabet(), std::move(images));
}

std::string format_word(const Word& w, int alphabet) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (alphabet > 9 && i > 0) out += ',';
    out += std::to_string(w[i]);
  }
  return out;
}

std::string format_signed_word(const SignedWord& w, int alphabet) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (alphabet > 9 && i > 0) out += ',';
    const int s = w.syllables[i];
    out += std::to_string(std::abs(s));
    if (s < 0) out += "^-1";
  }
  return out;
}

}  // namespace rauzy
