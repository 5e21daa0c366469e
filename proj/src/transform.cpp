#include "rauzy/transform.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "rauzy/error.h"

namespace rauzy {

Substitution split(const Substitution& s, const SplitSpec& spec) {
  const int n = s.alphabet();
  if (spec.a < 1 || spec.a > n) throw InvalidInput("split letter out of alphabet");
  if (spec.selected.empty()) throw InvalidInput("split needs a nonempty set of occurrences");
  std::vector<Word> images = s.images();
  const Letter b = n + 1;
  for (const Occurrence& o : spec.selected) {
    if (o.j < 1 || o.j > n || o.k < 1 || o.k > static_cast<int>(s(o.j).size()) || s(o.j)[o.k - 1] != spec.a)
      throw InvalidInput("(" + std::to_string(o.j) + ";" + std::to_string(o.k) + ") is not an occurrence of " +
                         std::to_string(spec.a));
    images[o.j - 1][o.k - 1] = b;
  }
  images.push_back(images[spec.a - 1]);
  return Substitution(n + 1, std::move(images));
}

Substitution merge_split(const Substitution& t, Letter a) {
  const int n = t.alphabet() - 1;
  const Letter b = n + 1;
  std::vector<Word> images(t.images().begin(), t.images().end() - 1);
  for (Word& w : images)
    std::replace(w.begin(), w.end(), b, a);
  return Substitution(n, std::move(images));
}

ComplexVector split_eigenvector(const ComplexVector& v, Letter a) {
  ComplexVector w(v.size() + 1);
  w.head(v.size()) = v;
  w(v.size()) = v(a - 1);
  return w;
}

Eigen::VectorXd split_eigenvector(const Eigen::VectorXd& v, Letter a) {
  Eigen::VectorXd w(v.size() + 1);
  w.head(v.size()) = v;
  w(v.size()) = v(a - 1);
  return w;
}

SpectralData split_spectral(const SpectralData& parent, Letter a) {
  SpectralData out = parent;
  out.alphabet = parent.alphabet + 1;
  out.beta_vector = split_eigenvector(parent.beta_vector, a);
  for (auto& v : out.conjugate_vectors) v = split_eigenvector(v, a);
  out.convention = Convention::SplitDerived;
  out.lineage.push_back("split " + std::to_string(a) + " -> " + std::to_string(parent.alphabet + 1) +
                        ": w = (v_1..v_n, v_" + std::to_string(a) + ")");
  return out;
}

IntMatrix ElementaryAutomorphism::matrix() const {
  const int n = forward.alphabet();
  IntMatrix m = IntMatrix::Identity(n, n);
  m(i - 1, j - 1) += 1;
  return m;
}

ElementaryAutomorphism elementary(int alphabet, Letter i, Letter j) {
  if (i == j) throw InvalidInput("elementary automorphism needs i != j");
  if (i < 1 || i > alphabet || j < 1 || j > alphabet) throw InvalidInput("elementary automorphism letter out of range");
  std::vector<SignedWord> fwd, inv;
  for (Letter k = 1; k <= alphabet; ++k) {
    if (k == j) {
      fwd.push_back(SignedWord({i, j}));
      inv.push_back(SignedWord({-i, j}));
    } else {
      fwd.push_back(SignedWord({k}));
      inv.push_back(SignedWord({k}));
    }
  }
  return {i, j, FreeGroupMorphism(alphabet, std::move(fwd)), FreeGroupMorphism(alphabet, std::move(inv))};
}

Letter preceding_letter(const Substitution& t, Letter b) {
  if (b < 1 || b > t.alphabet()) throw InvalidInput("letter out of alphabet");
  std::set<Letter> predecessors;
  std::vector<std::string> problems;
  for (const Occurrence& o : occurrences(t, b)) {
    const std::string at = "(" + std::to_string(o.j) + ";" + std::to_string(o.k) + ")";
    if (o.k == 1)
      problems.push_back(at + " is the first letter of its image");
    else
      predecessors.insert(t(o.j)[o.k - 2]);
  }
  if (predecessors.size() > 1) {
    std::ostringstream msg;
    msg << "occurrences of " << b << " have distinct predecessors {";
    bool first = true;
    for (Letter c : predecessors) msg << (first ? "" : ",") << c, first = false;
    msg << "}";
    problems.push_back(msg.str());
  }
  if (predecessors.empty() && problems.empty()) problems.push_back("letter " + std::to_string(b) + " never occurs");
  if (!problems.empty()) {
    std::string msg = "no unique preceding letter for " + std::to_string(b) + ":";
    for (const auto& p : problems) msg += " " + p + ";";
    msg.pop_back();
    throw PreconditionFailed(msg);
  }
  return *predecessors.begin();
}

FreeGroupMorphism conjugate_morphism(const Substitution& t, const ElementaryAutomorphism& rho) {
  if (rho.forward.alphabet() != t.alphabet()) throw InvalidInput("automorphism alphabet does not match substitution");
  return compose(rho.inverse, compose(t.as_morphism(), rho.forward));
}

Substitution conjugate(const Substitution& t, const ElementaryAutomorphism& rho) {
  const FreeGroupMorphism theta = conjugate_morphism(t, rho);
  for (std::size_t a = 0; a < theta.images().size(); ++a)
    if (!theta.images()[a].is_positive())
      throw PreconditionFailed("conjugate image of " + std::to_string(a + 1) + " is not positive: " +
                               format_signed_word(theta.images()[a], t.alphabet()));
  return Substitution::from_morphism(theta);
}

ComplexVector conjugate_eigenvector(const ComplexVector& w, const ElementaryAutomorphism& rho) {
  ComplexVector z = w;
  z(rho.j - 1) += w(rho.i - 1);
  return z;
}

Eigen::VectorXd conjugate_eigenvector(const Eigen::VectorXd& w, const ElementaryAutomorphism& rho) {
  Eigen::VectorXd z = w;
  z(rho.j - 1) += w(rho.i - 1);
  return z;
}

SpectralData conjugate_spectral(const SpectralData& parent, const ElementaryAutomorphism& rho) {
  if (parent.alphabet != rho.forward.alphabet()) throw InvalidInput("automorphism alphabet does not match spectral data");
  SpectralData out = parent;
  out.beta_vector = conjugate_eigenvector(parent.beta_vector, rho);
  for (auto& v : out.conjugate_vectors) v = conjugate_eigenvector(v, rho);
  out.convention = Convention::ConjugationDerived;
  out.lineage.push_back("conjugate by rho_" + std::to_string(rho.i) + std::to_string(rho.j) + ": z = w M_rho");
  return out;
}

}  // namespace rauzy
