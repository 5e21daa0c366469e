#include "rauzy/spectral.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "rauzy/error.h"

namespace rauzy {

namespace {

constexpr double kRootResidual = 1e-12;

Complex evaluate_derivative(const std::vector<std::int64_t>& coeffs, Complex x) {
  Complex acc = 0.0;
  const auto deg = coeffs.size() - 1;
  for (std::size_t i = 0; i < deg; ++i) acc = acc * x + static_cast<double>(coeffs[i]) * static_cast<double>(deg - i);
  return acc;
}

// Exact division check: does the monic `divisor` divide the monic `poly`?
bool divides(const std::vector<std::int64_t>& divisor, const std::vector<std::int64_t>& poly) {
  if (divisor.size() > poly.size()) return false;
  std::vector<__int128> rem(poly.begin(), poly.end());
  const std::size_t steps = poly.size() - divisor.size() + 1;
  for (std::size_t i = 0; i < steps; ++i) {
    const __int128 q = rem[i];
    for (std::size_t j = 0; j < divisor.size(); ++j) rem[i + j] -= q * divisor[j];
  }
  for (std::size_t i = steps; i < rem.size(); ++i)
    if (rem[i] != 0) return false;
  return true;
}

// Monic polynomial with the given roots, or nothing if its coefficients are
// not (numerically) integers.
std::optional<std::vector<std::int64_t>> integer_polynomial(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= c[i] * r;
    }
    c = std::move(next);
  }
  std::vector<std::int64_t> out;
  for (const Complex& x : c) {
    const double rounded = std::round(x.real());
    if (std::abs(x.imag()) > 1e-6 || std::abs(x.real() - rounded) > 1e-6 * std::max(1.0, std::abs(rounded)))
      return std::nullopt;
    out.push_back(static_cast<std::int64_t>(rounded));
  }
  return out;
}

std::vector<std::int64_t> minimal_polynomial_of(const std::vector<std::int64_t>& cp,
                                               const std::vector<Complex>& roots, std::size_t root_index) {
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (i != root_index) others.push_back(i);
  // Smallest set of roots (containing the given one) whose polynomial is an
  // integer factor of cp. Any integer factor containing beta is a multiple
  // of its minimal polynomial, so the smallest one is the minimal polynomial.
  for (std::size_t size = 0; size <= others.size(); ++size) {
    std::vector<bool> pick(others.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
    do {
      std::vector<Complex> subset{roots[root_index]};
      for (std::size_t i = 0; i < others.size(); ++i)
        if (pick[i]) subset.push_back(roots[others[i]]);
      if (auto poly = integer_polynomial(subset); poly && divides(*poly, cp)) return *poly;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return cp;
}

ComplexVector left_null_vector(const IntMatrix& m, Complex lambda) {
  const auto n = m.rows();
  Eigen::MatrixXcd a = m.transpose().cast<double>().cast<Complex>();
  a -= lambda * Eigen::MatrixXcd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().col(n - 1);
}

}  // namespace

Complex evaluate_polynomial(const std::vector<std::int64_t>& coeffs, Complex x) {
  Complex acc = 0.0;
  for (auto c : coeffs) acc = acc * x + static_cast<double>(c);
  return acc;
}

std::vector<Complex> polynomial_roots(const std::vector<std::int64_t>& coeffs) {
  const auto deg = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (Eigen::Index i = 0; i < deg; ++i) companion(0, i) = -static_cast<double>(coeffs[i + 1]);
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < deg; ++i) {
    Complex x = solver.eigenvalues()(i);
    for (int it = 0; it < 50 && std::abs(evaluate_polynomial(coeffs, x)) > kRootResidual * 1e-3; ++it) {
      const Complex d = evaluate_derivative(coeffs, x);
      if (std::abs(d) < 1e-300) break;
      const Complex next = x - evaluate_polynomial(coeffs, x) / d;
      if (std::abs(evaluate_polynomial(coeffs, next)) >= std::abs(evaluate_polynomial(coeffs, x))) break;
      x = next;
    }
    if (std::abs(x.imag()) < 1e-14 * std::max(1.0, std::abs(x))) x = x.real();
    roots.push_back(x);
  }
  return roots;
}

Classification classify(const Substitution& s) {
  const IntMatrix m = incidence_matrix(s);
  if (!is_primitive(m)) throw PreconditionFailed("substitution is not primitive");
  const auto cp = char_poly(m);
  const auto roots = polynomial_roots(cp);

  std::size_t dominant = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (std::abs(roots[i]) > std::abs(roots[dominant])) dominant = i;

  Classification c;
  c.minimal_polynomial = minimal_polynomial_of(cp, roots, dominant);
  c.degree = static_cast<int>(c.minimal_polynomial.size()) - 1;

  // Roots of the (squarefree) minimal polynomial are accurate under Newton.
  auto conj = polynomial_roots(c.minimal_polynomial);
  std::size_t b = 0;
  for (std::size_t i = 1; i < conj.size(); ++i)
    if (conj[i].real() > conj[b].real() && std::abs(conj[i].imag()) < 1e-9) b = i;
  c.beta = conj[b].real();
  conj.erase(conj.begin() + static_cast<long>(b));

  std::vector<Complex> reals, complexes;
  for (const Complex& z : conj) {
    if (std::abs(z.imag()) < 1e-9)
      reals.push_back(z.real());
    else if (z.imag() > 0)
      complexes.push_back(z);
  }
  std::sort(reals.begin(), reals.end(), [](Complex x, Complex y) { return x.real() > y.real(); });
  std::sort(complexes.begin(), complexes.end(), [](Complex x, Complex y) {
    if (std::abs(std::abs(x) - std::abs(y)) > 1e-12) return std::abs(x) < std::abs(y);
    return std::arg(x) < std::arg(y);
  });
  c.real_conjugates = static_cast<int>(reals.size());
  c.complex_pairs = static_cast<int>(complexes.size());
  c.conjugates = reals;
  c.conjugates.insert(c.conjugates.end(), complexes.begin(), complexes.end());

  c.pisot = c.beta > 1.0 && std::all_of(conj.begin(), conj.end(), [](Complex z) { return std::abs(z) < 1.0; });
  c.irreducible = c.degree == s.alphabet();
  const auto constant = c.minimal_polynomial.back();
  c.unit = constant == 1 || constant == -1;
  return c;
}

std::string to_string(Convention c) {
  switch (c) {
    case Convention::Solved: return "solved-and-normalized";
    case Convention::PowerDerived: return "power-derived";
    case Convention::SplitDerived: return "split-derived";
    case Convention::ConjugationDerived: return "conjugation-derived";
  }
  return "unknown";
}

int SpectralData::dimension() const { return real_count + 2 * (static_cast<int>(conjugates.size()) - real_count); }

double SpectralData::contraction_ratio() const {
  double q = 0.0;
  for (const Complex& z : conjugates) q = std::max(q, std::abs(z));
  return q;
}

SpectralData base_eigenvectors(const Substitution& s) {
  const Classification c = classify(s);
  if (!c.pisot) throw PreconditionFailed("dominant eigenvalue is not a Pisot number");
  const IntMatrix m = incidence_matrix(s);

  SpectralData sd;
  sd.alphabet = s.alphabet();
  sd.beta = c.beta;
  sd.degree = c.degree;
  sd.real_count = c.real_conjugates;
  sd.conjugates = c.conjugates;
  sd.convention = Convention::Solved;

  ComplexVector vb = left_null_vector(m, c.beta);
  // Normalize on the first coordinate that does not vanish; the same index is
  // used for every conjugate so the vectors are Galois images of each other.
  const double scale = vb.cwiseAbs().maxCoeff();
  int idx = 0;
  while (idx < vb.size() && std::abs(vb(idx)) < 1e-8 * scale) ++idx;
  sd.normalization_index = idx;
  vb /= vb(idx);
  sd.beta_vector = vb.real();

  for (const Complex& z : sd.conjugates) {
    ComplexVector v = left_null_vector(m, z);
    if (std::abs(v(idx)) < 1e-12) throw PreconditionFailed("normalization coordinate vanishes on a conjugate eigenvector");
    v /= v(idx);
    sd.conjugate_vectors.push_back(v);
  }
  sd.lineage.push_back("solved left eigenvectors of " + std::to_string(s.alphabet()) +
                       "-letter incidence matrix, coordinate " + std::to_string(idx + 1) + " = 1");
  return sd;
}

SpectralData power_spectral(const SpectralData& sd, int exponent) {
  if (exponent < 1) throw InvalidInput("power exponent must be >= 1");
  SpectralData out = sd;
  out.beta = std::pow(sd.beta, exponent);
  for (Complex& z : out.conjugates) z = std::pow(z, exponent);
  out.convention = Convention::PowerDerived;
  out.lineage.push_back("power " + std::to_string(exponent) + ": same eigenvectors, multipliers raised");
  return out;
}

double eigen_residual(const SpectralData& sd, const IntMatrix& m) {
  if (m.rows() != sd.alphabet) throw InvalidInput("spectral data and matrix sizes differ");
  const Eigen::MatrixXd md = m.cast<double>();
  double worst = (sd.beta_vector.transpose() * md - sd.beta * sd.beta_vector.transpose()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd mc = md.cast<Complex>();
  for (std::size_t j = 0; j < sd.conjugates.size(); ++j) {
    const ComplexVector& v = sd.conjugate_vectors[j];
    worst = std::max(worst, (v.transpose() * mc - sd.conjugates[j] * v.transpose()).cwiseAbs().maxCoeff());
  }
  return worst;
}

Eigen::VectorXd Projection::operator()(const AbelianVector& x) const {
  if (static_cast<int>(x.size()) != alphabet()) throw InvalidInput("projection applied to vector of wrong size");
  Eigen::VectorXd v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = static_cast<double>(x[i]);
  return rows_ * v;
}

Contraction::Contraction(std::vector<Complex> multipliers, int real_count) : multipliers_(std::move(multipliers)) {
  const int s = static_cast<int>(multipliers_.size()) - real_count;
  const int dim = real_count + 2 * s;
  matrix_ = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j < real_count; ++j) matrix_(j, j) = multipliers_[j].real();
  for (int j = 0; j < s; ++j) {
    const Complex z = multipliers_[real_count + j];
    const int o = real_count + 2 * j;
    matrix_(o, o) = z.real();
    matrix_(o, o + 1) = -z.imag();
    matrix_(o + 1, o) = z.imag();
    matrix_(o + 1, o + 1) = z.real();
  }
}

Projection projection_of(const SpectralData& sd) {
  Eigen::MatrixXd rows(sd.dimension(), sd.alphabet);
  int r = 0;
  for (std::size_t j = 0; j < sd.conjugates.size(); ++j) {
    const ComplexVector& v = sd.conjugate_vectors[j];
    if (static_cast<int>(j) < sd.real_count) {
      rows.row(r++) = v.real().transpose();
    } else {
      rows.row(r++) = v.real().transpose();
      rows.row(r++) = v.imag().transpose();
    }
  }
  return Projection(std::move(rows));
}

Contraction contraction_of(const SpectralData& sd) { return Contraction(sd.conjugates, sd.real_count); }

}  // namespace rauzy
