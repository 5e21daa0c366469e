#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rauzy/substitution.h"

namespace rauzy {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Numerical classification of the dominant eigenvalue of a primitive
/// substitution.
struct Classification {
  double beta = 0.0;
  /// Minimal polynomial of beta, monic, leading coefficient first.
  std::vector<std::int64_t> minimal_polynomial;
  int degree = 0;
  int real_conjugates = 0;  ///< r
  int complex_pairs = 0;    ///< s, with r + 2s = degree - 1
  /// Galois conjugates other than beta: r reals (descending), then one
  /// representative with positive imaginary part per complex pair, sorted
  /// by modulus then argument.
  std::vector<Complex> conjugates;
  bool pisot = false;
  bool irreducible = false;
  /// beta is an algebraic unit (constant term of its minimal polynomial is +-1).
  bool unit = false;
};

/// Roots of a monic integer polynomial (leading coefficient first): companion
/// matrix eigenvalues, each polished by Newton iteration.
std::vector<Complex> polynomial_roots(const std::vector<std::int64_t>& coeffs);
Complex evaluate_polynomial(const std::vector<std::int64_t>& coeffs, Complex x);

/// Throws PreconditionFailed for non-primitive input.
Classification classify(const Substitution& s);

/// How the eigenvectors of a SpectralData were obtained. Only `Solved` data
/// is computed by linear algebra; every other convention is derived from a
/// parent by an explicit formula and never re-solved.
enum class Convention { Solved, PowerDerived, SplitDerived, ConjugationDerived };

std::string to_string(Convention c);

/// Dominant eigenvalue, its contracting conjugates, and one left eigenvector
/// per value under a single shared normalization.
struct SpectralData {
  int alphabet = 0;
  double beta = 0.0;
  int degree = 0;
  int real_count = 0;                  ///< r
  std::vector<Complex> conjugates;     ///< the r + s multipliers of the contraction
  Eigen::VectorXd beta_vector;         ///< left eigenvector for beta
  std::vector<ComplexVector> conjugate_vectors;  ///< one per conjugate, same order
  Convention convention = Convention::Solved;
  /// Coordinate fixed to 1 when the vectors were solved.
  int normalization_index = 0;
  /// Human-readable derivation steps, oldest first.
  std::vector<std::string> lineage;

  /// Dimension of the representation space, r + 2s = degree - 1.
  int dimension() const;
  /// Largest conjugate modulus (the contraction ratio).
  double contraction_ratio() const;
};

/// Left eigenvectors of the incidence matrix for beta and each conjugate.
/// Requires a primitive Pisot substitution (PreconditionFailed otherwise).
SpectralData base_eigenvectors(const Substitution& s);

/// Spectral data of s^N from the data of s: same eigenvectors, multipliers
/// raised to the N-th power.
SpectralData power_spectral(const SpectralData& sd, int exponent);

/// Max over stored pairs of the infinity norm of v M - lambda v.
double eigen_residual(const SpectralData& sd, const IntMatrix& m);

/// Linear map R^n -> R^(d-1); complex coordinates flattened as (re, im).
class Projection {
 public:
  explicit Projection(Eigen::MatrixXd rows) : rows_(std::move(rows)) {}

  int dimension() const { return static_cast<int>(rows_.rows()); }
  int alphabet() const { return static_cast<int>(rows_.cols()); }
  const Eigen::MatrixXd& matrix() const { return rows_; }
  Eigen::VectorXd operator()(const AbelianVector& x) const;
  /// pi(e_a).
  Eigen::VectorXd letter(Letter a) const { return rows_.col(a - 1); }

 private:
  Eigen::MatrixXd rows_;
};

/// diag(beta_1, ..., beta_{r+s}) acting on R^r x C^s.
class Contraction {
 public:
  Contraction(std::vector<Complex> multipliers, int real_count);

  const std::vector<Complex>& multipliers() const { return multipliers_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  std::vector<Complex> multipliers_;
  Eigen::MatrixXd matrix_;
};

Projection projection_of(const SpectralData& sd);
Contraction contraction_of(const SpectralData& sd);

}  // namespace rauzy
