#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "rauzy/error.h"
#include "rauzy/transform.h"
#include "rauzy/words.h"

using namespace rauzy;
using fx::word;

namespace {

SignedWord sw(std::vector<int> s) { return SignedWord(std::move(s)); }

SignedWord random_signed(std::mt19937& rng, int n, int len) {
  std::uniform_int_distribution<int> letter(1, n), sign(0, 1);
  std::vector<int> s(len);
  for (int& x : s) x = letter(rng) * (sign(rng) ? 1 : -1);
  return SignedWord(s);
}

// Product of random elementary automorphisms and their inverses; never
// erases a letter, so compositions stay valid morphisms.
FreeGroupMorphism random_automorphism(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> letter(1, n), count(1, 4), dir(0, 1);
  FreeGroupMorphism f = FreeGroupMorphism::identity(n);
  for (int t = count(rng); t > 0; --t) {
    const Letter i = letter(rng);
    Letter j = letter(rng);
    while (j == i) j = letter(rng);
    const auto rho = elementary(n, i, j);
    f = compose(f, dir(rng) ? rho.forward : rho.inverse);
  }
  return f;
}

}  // namespace

TEST_CASE("concat") {
  CHECK(concat(word("12"), word("3")) == word("123"));
  CHECK(concat(Word{}, word("21")) == word("21"));
  CHECK(concat(word("21"), word("31")) == word("2131"));
}

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(reduce(sw({2, -2, 5})) == sw({5}));
  CHECK(reduce(sw({4, 1, 2, 1, 3, 1, 2, -2, 5})) == SignedWord::from_word(word("4121315")));
  CHECK(reduce(sw({-1, 1})).empty());
  CHECK(reduce(sw({1, 2, -2, -1, 3})) == sw({3}));
}

TEST_CASE("apply_morphism") {
  const auto rho = elementary(4, 2, 4);
  CHECK(apply_morphism(rho.forward, sw({4})) == sw({2, 4}));

  const SignedWord w = sw({3, -1, 2, 2});
  CHECK(apply_morphism(FreeGroupMorphism::identity(3), w) == w);

  // 2 -> 211 sends 2^-1 to 1^-1 1^-1 2^-1
  const FreeGroupMorphism f(2, {sw({1}), sw({2, 1, 1})});
  CHECK(apply_morphism(f, sw({-2})) == sw({-1, -1, -2}));
}

TEST_CASE("compose") {
  const auto rho = elementary(4, 2, 4);
  CHECK(compose(rho.inverse, rho.forward) == FreeGroupMorphism::identity(4));

  const FreeGroupMorphism theta = compose(rho.inverse, compose(fx::drill_tau.as_morphism(), rho.forward));
  CHECK(Substitution::from_morphism(theta) == fx::drill_theta);

  std::mt19937 rng(7);
  const auto f = random_automorphism(rng, 3);
  CHECK(compose(f, FreeGroupMorphism::identity(3)) == f);
}

TEST_CASE("abelianize") {
  CHECK(abelianize(word("1213121"), 3) == AbelianVector{4, 2, 1});
  CHECK(abelianize(Word{}, 3) == AbelianVector{0, 0, 0});
  CHECK(abelianize(sw({2, -2}), 2) == AbelianVector{0, 0});
  CHECK(abelianize(sw({1, -2, -2}), 2) == AbelianVector{1, -2});
}

TEST_CASE("signed word helpers") {
  CHECK(sw({1, 2}).is_positive());
  CHECK_FALSE(sw({1, -2}).is_positive());
  CHECK_THROWS_AS(sw({1, -2}).to_word(), InvalidInput);
  CHECK(sw({1, -2, 3}).inverse() == sw({-3, 2, -1}));
  CHECK(format_signed_word(sw({2, -1, -1}), 2) == "21^-11^-1");
  CHECK(format_word(word("1213"), 4) == "1213");
  CHECK(format_word(Word{1, 10, 2}, 10) == "1,10,2");
}

TEST_CASE("morphism construction validates letters") {
  CHECK_THROWS_AS(FreeGroupMorphism(2, {sw({1}), sw({3})}), InvalidInput);
  CHECK_THROWS_AS(FreeGroupMorphism(2, {sw({1})}), InvalidInput);
}

TEST_CASE("property: reduce is idempotent and preserves the abelianization") {
  std::mt19937 rng(11);
  for (int t = 0; t < 500; ++t) {
    const SignedWord w = random_signed(rng, 3, 12);
    const SignedWord r = reduce(w);
    CHECK(reduce(r) == r);
    CHECK(abelianize(r, 3) == abelianize(w, 3));
    for (std::size_t p = 1; p < r.size(); ++p) CHECK(r.syllables[p] != -r.syllables[p - 1]);
  }
}

TEST_CASE("property: abelianization is additive") {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> letter(1, 4), len(0, 9);
  for (int t = 0; t < 300; ++t) {
    Word u(len(rng)), v(len(rng));
    for (Letter& x : u) x = letter(rng);
    for (Letter& x : v) x = letter(rng);
    const auto a = abelianize(u, 4), b = abelianize(v, 4), c = abelianize(concat(u, v), 4);
    for (int i = 0; i < 4; ++i) CHECK(c[i] == a[i] + b[i]);
  }
}

TEST_CASE("property: composition is the homomorphism law") {
  std::mt19937 rng(13);
  for (int t = 0; t < 200; ++t) {
    const auto f = random_automorphism(rng, 3), g = random_automorphism(rng, 3);
    const SignedWord w = random_signed(rng, 3, 6);
    CHECK(apply_morphism(compose(f, g), w) == apply_morphism(f, apply_morphism(g, w)));
    const SignedWord u = random_signed(rng, 3, 5);
    CHECK(apply_morphism(f, concat(w, u)) == reduce(concat(apply_morphism(f, w), apply_morphism(f, u))));
  }
}

TEST_CASE("property: elementary automorphisms invert each other") {
  for (int n = 2; n <= 5; ++n)
    for (Letter i = 1; i <= n; ++i)
      for (Letter j = 1; j <= n; ++j) {
        if (i == j) continue;
        const auto rho = elementary(n, i, j);
        CHECK(compose(rho.inverse, rho.forward) == FreeGroupMorphism::identity(n));
        CHECK(compose(rho.forward, rho.inverse) == FreeGroupMorphism::identity(n));
      }
}
