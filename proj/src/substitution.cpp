#include "rauzy/substitution.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "rauzy/error.h"

namespace rauzy {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("integer overflow in exact matrix arithmetic");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Substitution::Substitution(int alphabet, std::vector<Word> images) : images_(std::move(images)) {
  if (alphabet < 1) throw InvalidInput("alphabet must be nonempty");
  if (static_cast<int>(images_.size()) != alphabet)
    throw InvalidInput("substitution needs exactly one image per letter");
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (images_[a].empty())
      throw InvalidInput("image of letter " + std::to_string(a + 1) + " is empty (substitutions are non-erasing)");
    for (Letter l : images_[a])
      if (l < 1 || l > alphabet)
        throw InvalidInput("image of letter " + std::to_string(a + 1) + " contains out-of-range letter " +
                           std::to_string(l));
  }
}

Substitution Substitution::identity(int alphabet) {
  std::vector<Word> images;
  for (Letter a = 1; a <= alphabet; ++a) images.push_back({a});
  return Substitution(alphabet, std::move(images));
}

Substitution Substitution::from_morphism(const FreeGroupMorphism& f) {
  std::vector<Word> images;
  for (const auto& img : f.images()) images.push_back(img.to_word());
  return Substitution(f.alphabet(), std::move(images));
}

Word Substitution::apply(const Word& w) const {
  Word out;
  for (Letter a : w) {
    const Word& img = (*this)(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

FreeGroupMorphism Substitution::as_morphism() const {
  std::vector<SignedWord> images;
  for (const auto& img : images_) images.push_back(SignedWord::from_word(img));
  return FreeGroupMorphism(alphabet(), std::move(images));
}

std::size_t Substitution::total_length() const {
  std::size_t n = 0;
  for (const auto& img : images_) n += img.size();
  return n;
}

IntMatrix incidence_matrix(const Substitution& s) {
  const int n = s.alphabet();
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Letter j = 1; j <= n; ++j)
    for (Letter i : s(j)) ++m(i - 1, j - 1);
  return m;
}

bool is_primitive(const IntMatrix& m) {
  const auto n = m.rows();
  using BoolMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
  const BoolMatrix pattern = (m.array() > 0).cast<int>().matrix();
  BoolMatrix p = pattern;
  // Wielandt: a primitive n x n matrix has a positive power of order at most n^2 - 2n + 2.
  const auto bound = std::max<Eigen::Index>(1, n * n - 2 * n + 2);
  for (Eigen::Index e = 1; e <= bound; ++e) {
    if ((p.array() > 0).all()) return true;
    p = ((p * pattern).array() > 0).cast<int>().matrix();
  }
  return false;
}

bool is_primitive(const Substitution& s) { return is_primitive(incidence_matrix(s)); }

std::int64_t determinant(const IntMatrix& m) {
  const auto n = m.rows();
  if (n == 0) return 1;
  std::vector<i128> a(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  int sign = 1;
  i128 prev = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index r = k + 1; r < n; ++r)
        if (a[r * n + k] != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;
      for (Eigen::Index c = 0; c < n; ++c) std::swap(a[k * n + c], a[swap * n + c]);
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
    prev = a[k * n + k];
  }
  return narrow(sign * a[(n - 1) * n + (n - 1)]);
}

bool is_unimodular(const Substitution& s) {
  const auto d = determinant(incidence_matrix(s));
  return d == 1 || d == -1;
}

std::vector<std::int64_t> char_poly(const IntMatrix& m) {
  const auto n = m.rows();
  // Faddeev-LeVerrier: N_k = A N_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A N_k) / k.
  // All divisions are exact for integer matrices.
  std::vector<i128> a(n * n), nk(n * n, 0), tmp(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  std::vector<i128> coeffs(n + 1, 0);
  coeffs[0] = 1;
  for (Eigen::Index k = 1; k <= n; ++k) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        i128 acc = 0;
        for (Eigen::Index l = 0; l < n; ++l) acc += a[i * n + l] * nk[l * n + j];
        tmp[i * n + j] = acc + (i == j ? coeffs[k - 1] : 0);
      }
    nk.swap(tmp);
    i128 trace = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index l = 0; l < n; ++l) trace += a[i * n + l] * nk[l * n + i];
    coeffs[k] = -trace / k;
  }
  std::vector<std::int64_t> out;
  for (auto c : coeffs) out.push_back(narrow(c));
  return out;
}

std::vector<std::int64_t> char_poly(const Substitution& s) { return char_poly(incidence_matrix(s)); }

IntMatrix matrix_power(const IntMatrix& m, int exponent) {
  IntMatrix r = IntMatrix::Identity(m.rows(), m.cols());
  for (int e = 0; e < exponent; ++e) r = r * m;
  return r;
}

Substitution compose(const Substitution& f, const Substitution& g) {
  if (f.alphabet() != g.alphabet()) throw InvalidInput("composing substitutions over different alphabets");
  std::vector<Word> images;
  for (const auto& img : g.images()) images.push_back(f.apply(img));
  return Substitution(f.alphabet(), std::move(images));
}

Substitution power(const Substitution& s, int exponent) {
  if (exponent < 1) throw InvalidInput("power exponent must be >= 1");
  Substitution r = s;
  for (int e = 1; e < exponent; ++e) r = compose(s, r);
  return r;
}

std::vector<Occurrence> occurrences(const Substitution& s, Letter i) {
  if (i < 1 || i > s.alphabet()) throw InvalidInput("letter out of alphabet");
  std::vector<Occurrence> occ;
  for (Letter j = 1; j <= s.alphabet(); ++j) {
    const Word& w = s(j);
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] == i) occ.push_back({j, static_cast<int>(k + 1)});
  }
  return occ;
}

PeriodicSeed periodic_seed(const Substitution& s) {
  const int n = s.alphabet();
  std::set<std::vector<Letter>> cycles;  // each cycle stored starting at its smallest letter
  for (Letter start = 1; start <= n; ++start) {
    std::vector<int> seen(n + 1, -1);
    std::vector<Letter> path;
    Letter a = start;
    while (seen[a] < 0) {
      seen[a] = static_cast<int>(path.size());
      path.push_back(a);
      a = s(a).front();
    }
    std::vector<Letter> cyc(path.begin() + seen[a], path.end());
    std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    cycles.insert(cyc);
  }
  std::vector<std::vector<Letter>> ordered(cycles.begin(), cycles.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });

  const IntMatrix m = incidence_matrix(s);
  for (const auto& cyc : ordered) {
    const int period = static_cast<int>(cyc.size());
    const IntMatrix step = matrix_power(m, period);
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> counts = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>::Zero(n);
    counts(cyc.front() - 1) = 1;
    // Lengths are nondecreasing along s^period; if they never exceed 1 within
    // n steps they are stuck forever.
    for (int t = 0; t <= n; ++t) {
      counts = step * counts;
      if (counts.sum() > 1) return {cyc.front(), period};
    }
  }
  throw PreconditionFailed("no periodic point with growing iterates (substitution is not primitive)");
}

Word prefix_stream(const Substitution& s, PeriodicSeed seed, std::size_t m) {
  const Substitution step = power(s, seed.period);
  if (step(seed.letter).front() != seed.letter) throw InvalidInput("invalid periodic seed");
  Word w{seed.letter};
  while (w.size() < m) {
    Word next;
    next.reserve(std::min<std::size_t>(m, w.size() * 8) + 16);
    for (Letter a : w) {
      const Word& img = step(a);
      next.insert(next.end(), img.begin(), img.end());
      if (next.size() >= m) break;
    }
    if (next.size() <= w.size()) throw PreconditionFailed("periodic point does not grow from the seed");
    w = std::move(next);
  }
  w.resize(m);
  return w;
}

CoincidenceResult strong_coincidence(const Substitution& s, int max_depth) {
  constexpr std::size_t kMaxWordLength = 1u << 20;
  const int n = s.alphabet();
  CoincidenceResult result;
  result.max_depth = max_depth;

  std::vector<std::pair<Letter, Letter>> pending;
  for (Letter j1 = 1; j1 <= n; ++j1)
    for (Letter j2 = j1 + 1; j2 <= n; ++j2) pending.emplace_back(j1, j2);

  // Prefix and suffix Abelianizations, each tagged with the letter in between.
  struct Profile {
    std::map<std::pair<AbelianVector, Letter>, std::size_t> prefix, suffix;
  };
  auto profile = [n](const Word& w) {
    Profile p;
    AbelianVector pre(n, 0), total = abelianize(w, n);
    for (std::size_t t = 0; t < w.size(); ++t) {
      AbelianVector suf = total;
      for (int c = 0; c < n; ++c) suf[c] -= pre[c];
      --suf[w[t] - 1];
      p.prefix.emplace(std::make_pair(pre, w[t]), t + 1);
      p.suffix.emplace(std::make_pair(suf, w[t]), t + 1);
      ++pre[w[t] - 1];
    }
    return p;
  };

  std::vector<Word> images(n);
  for (Letter a = 1; a <= n; ++a) images[a - 1] = {a};
  for (int k = 1; k <= max_depth && !pending.empty(); ++k) {
    std::size_t longest = 0;
    for (auto& w : images) {
      w = s.apply(w);
      longest = std::max(longest, w.size());
    }
    if (longest > kMaxWordLength) break;
    std::vector<Profile> profiles;
    for (const auto& w : images) profiles.push_back(profile(w));

    std::vector<std::pair<Letter, Letter>> still;
    for (auto [j1, j2] : pending) {
      const Profile& p1 = profiles[j1 - 1];
      const Profile& p2 = profiles[j2 - 1];
      std::optional<CoincidenceWitness> found;
      for (const auto& [key, pos1] : p1.prefix) {
        if (auto it = p2.prefix.find(key); it != p2.prefix.end()) {
          found = CoincidenceWitness{j1, j2, k, key.second, pos1, it->second, true};
          break;
        }
      }
      if (!found) {
        for (const auto& [key, pos1] : p1.suffix) {
          if (auto it = p2.suffix.find(key); it != p2.suffix.end()) {
            found = CoincidenceWitness{j1, j2, k, key.second, pos1, it->second, false};
            break;
          }
        }
      }
      if (found)
        result.witnesses.push_back(*found);
      else
        still.emplace_back(j1, j2);
    }
    pending.swap(still);
  }
  result.unresolved = pending;
  result.holds = pending.empty();
  return result;
}

}  // namespace rauzy
