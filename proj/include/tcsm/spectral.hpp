#pragma once

// Exact action of the similarity-transformed operator
//
//   H1 = sum_j D_j^2 + beta sum_{(a,b) in pairs} (z_a + z_b)/(z_a - z_b) (D_a - D_b),
//
// D_j = z_j d/dz_j, on Laurent polynomials, its degree-graded matrices on
// symmetric / cyclic-invariant bases, and the resulting eigenvalue searches.
// Eigenvalues are in reduced units (eps - eps0).

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcsm/model.hpp"
#include "tcsm/polyalg.hpp"
#include "tcsm/wavefunction.hpp"

namespace tcsm {

class H1Operator {
 public:
  explicit H1Operator(ModelParams params);

  const ModelParams& params() const { return params_; }
  const PairList& drift_pairs() const { return pairs_; }

  /// Exact H1 p. p must be beta-free (coefficients of the result are
  /// affine in beta). Throws NonDivisible if some (D_a - D_b) p is not
  /// divisible by (z_a - z_b).
  LaurentPoly apply(const LaurentPoly& p) const;

 private:
  ModelParams params_;
  PairList pairs_;
};

inline LaurentPoly apply_H1(const H1Operator& op, const LaurentPoly& p) { return op.apply(p); }

/// A phi = lambda E phi on homogeneous degree-d polynomials: A maps the
/// symmetric basis into cyclic-invariant coordinates, E embeds one basis
/// in the other.
struct Pencil {
  int degree = 0;
  BasisSet sym;
  BasisSet cyc;
  std::vector<std::vector<Coeff>> a;  ///< a[row][col], rows = cyclic, cols = symmetric
  Eigen::MatrixXd e;

  Eigen::MatrixXd a_at(double beta) const;
  /// True if every column of A is (exactly) a symmetric polynomial.
  bool closes_on_symmetric() const;
};

Pencil build_pencil(const H1Operator& op, int degree);

struct EigenPair {
  cplx lambda;
  Eigen::VectorXcd vector;  ///< coordinates in the symmetric basis
  double residual = 0.0;    ///< |A v - lambda E v| / |E v|
};

/// Residuals above this are clearly not eigenpairs of the pencil.
inline constexpr double kSpuriousThreshold = 1e-4;

struct PencilSolution {
  std::vector<EigenPair> certified;
  std::vector<EigenPair> spurious;
  std::vector<EigenPair> ambiguous;  ///< tol <= residual <= kSpuriousThreshold
  double embedding_condition = 1.0;
};

/// Candidates from E^+ A, each checked in the full cyclic space. Throws
/// RankDeficient when E^T E is singular.
PencilSolution solve_pencil(const Pencil& pencil, double beta, double tol = 1e-10);

struct ClosedLevel {
  std::string name;
  int degree = 0;
  double value = 0.0;
};

/// 1 + nu beta, (N-1) + nu beta, N, N + 2(1 + nu beta), 2 + 2 nu beta with
/// nu the neighbor count (2r when r < c).
std::vector<ClosedLevel> closed_form_levels(const ModelParams& params);

struct SpectrumLevel {
  double lambda = 0.0;
  double imag = 0.0;
  int multiplicity = 1;
  double residual = 0.0;
  std::vector<std::string> matched;
};

struct SpectrumReport {
  int n = 0;
  int r = 0;
  double beta = 0.0;
  double length = 0.0;
  int degree = 0;
  std::size_t dim_sym = 0;
  std::size_t dim_cyc = 0;
  std::vector<SpectrumLevel> levels;  ///< certified, ascending
  std::size_t certified_count = 0;
  std::size_t spurious_count = 0;
  std::size_t ambiguous_count = 0;
  std::optional<double> min_spurious_residual;
  double momentum = 0.0;  ///< (2 pi / L) d
  bool closes_on_symmetric = false;
  double tol = 0.0;
};

SpectrumReport spectrum(const H1Operator& op, int degree, double tol = 1e-10);

/// Exact polynomial form of a closed-form state at rational beta. Ground,
/// E1, ENm1, EN, Combo, CosSum, NonDegZero are supported.
LaurentPoly state_polynomial(StateKind kind, const ModelParams& params, const Rational& beta);

/// Converts to the numeric representation used by the wavefunction engine.
PhiPolynomial to_phi_polynomial(const LaurentPoly& p, double beta);
PhiPolynomial to_phi_polynomial(const BasisSet& sym, const Eigen::VectorXcd& coords);

struct ExactEigenCheck {
  bool is_eigen = false;
  Rational lambda;
  LaurentPoly residual;
};

/// H1 p == lambda p exactly at rational beta. p may carry rational
/// coefficients only (no symbolic beta).
ExactEigenCheck exact_eigenvalue(const H1Operator& op, const LaurentPoly& p, const Rational& beta);

struct ParityResult {
  int degree = 0;
  Rational lambda;
  LaurentPoly partner;          ///< p(1/z)
  bool partner_is_eigen = false;
  Rational partner_lambda;
  int boost = 0;                ///< power of prod z_i clearing negative exponents
  LaurentPoly reduced_partner;  ///< (prod z_i)^boost p(1/z)
  Rational reduced_lambda;
  bool self_partner = false;    ///< p(1/z) proportional to p
  int kappa = 0;                ///< momentum in units of 2 pi / L
  int partner_kappa = 0;
  bool degenerate_pair = false; ///< distinct partner with equal energy, kappa -> -kappa
  bool non_degenerate = false;  ///< maps to itself under z -> 1/z
};

ParityResult parity_partner(const H1Operator& op, const LaurentPoly& p, const Rational& beta);

struct BoostResult {
  int degree = 0;
  int q = 0;
  bool certified = false;  ///< (prod z)^q p is an exact eigenvector
  Rational lambda_base;
  Rational lambda_boosted;
  Rational shift;
  std::int64_t operator_shift = 0;///< 2 q d + N q^2
  std::int64_t alt_shift = 0;  ///< 2 N q d + (N q)^2 = 2Nq (L/2pi) kappa + (Nq)^2
  bool matches_operator = false;
  bool matches_alt = false;
};

BoostResult boost_shift_check(const H1Operator& op, const LaurentPoly& p, int q,
                              const Rational& beta);

}  // namespace tcsm
