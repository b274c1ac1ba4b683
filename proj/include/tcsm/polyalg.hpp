#pragma once

// Exact sparse Laurent polynomials in z_1..z_N whose coefficients are
// rational affine forms a + b*beta. This is the substrate on which the
// similarity-transformed Hamiltonian is applied exactly.
//
// Text format (stable, used by goldens):
//   zero polynomial       "0"
//   otherwise             term (" + " term)*   in ascending graded-lex order
//   term                  "(" coeff ")" "[" e_1 "," ... "," e_N "]"
//   coeff                 a ("+"|"-") |b| "*B"    with a, b reduced rationals p or p/q
// e.g. "(1+0*B)[1,0,0] + (-1/2+3*B)[0,2,-1]"

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcsm {

using Rational = mpq_class;

/// Exact a + b*beta.
class Coeff {
 public:
  Coeff() = default;
  Coeff(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Coeff(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static Coeff beta(Rational b = 1) { return Coeff(0, std::move(b)); }

  const Rational& constant() const { return a_; }
  const Rational& beta_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool has_beta() const { return sgn(b_) != 0; }

  double eval(double beta) const { return a_.get_d() + b_.get_d() * beta; }
  Rational eval(const Rational& beta) const { return a_ + b_ * beta; }

  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Rational& s);
  Coeff operator-() const { return Coeff(-a_, -b_); }

  friend Coeff operator+(Coeff x, const Coeff& y) { return x += y; }
  friend Coeff operator-(Coeff x, const Coeff& y) { return x -= y; }
  friend Coeff operator*(Coeff x, const Rational& s) { return x *= s; }
  friend Coeff operator*(const Rational& s, Coeff x) { return x *= s; }
  /// Throws CoefficientOverflow when both factors depend on beta.
  friend Coeff operator*(const Coeff& x, const Coeff& y);
  friend bool operator==(const Coeff& x, const Coeff& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string to_string() const;
  static Coeff parse(std::string_view text);

 private:
  Rational a_;
  Rational b_;
};

using Exponent = std::vector<int>;

/// Total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const Exponent& x, const Exponent& y) const;
};

int total_degree(const Exponent& e);

class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Coeff, GradedLex>;

  explicit LaurentPoly(int n_vars = 0) : n_(n_vars) {}

  static LaurentPoly constant(int n_vars, const Coeff& c);
  static LaurentPoly monomial(Exponent e, const Coeff& c = Coeff(1));
  /// z_j (0-based j)
  static LaurentPoly variable(int n_vars, int j);

  int n_vars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const Exponent& e) const;
  /// Adds c to the coefficient of z^e, pruning zeros.
  void add_term(const Exponent& e, const Coeff& c);

  /// Common total degree of all terms; nullopt if mixed or zero.
  std::optional<int> degree() const;
  bool has_beta() const;

  LaurentPoly substitute_beta(const Rational& beta) const;
  /// z_j -> 1/z_j for all j.
  LaurentPoly inverted() const;
  /// Multiplies by (z_1 ... z_N)^q.
  LaurentPoly boosted(int q) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Coeff& c);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
  friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
  friend LaurentPoly operator*(LaurentPoly x, const Coeff& c) { return x *= c; }
  friend LaurentPoly operator*(const Coeff& c, LaurentPoly x) { return x *= c; }
  friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
  friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) {
    return x.n_ == y.n_ && x.terms_ == y.terms_;
  }

  std::string to_string() const;
  /// Inverse of to_string; the zero polynomial needs n_vars supplied.
  static LaurentPoly parse(std::string_view text, int n_vars_if_zero = 0);

 private:
  void check_compatible(const LaurentPoly& o) const;

  int n_;
  TermMap terms_;
};

/// D_j = z_j d/dz_j
LaurentPoly apply_D(int j, const LaurentPoly& p);

/// q with q (z_a - z_b) = p. Throws NonDivisible carrying the remainder
/// p|_{z_a = z_b} otherwise.
LaurentPoly exact_divide(const LaurentPoly& p, int a, int b);

/// e_k(z_1..z_N); 0 <= k <= N.
LaurentPoly elementary_symmetric(int k, int n);

/// p_k = sum_j z_j^k
LaurentPoly power_sum(int k, int n);

/// Partitions of d into at most max_parts positive parts, each in
/// non-increasing order, listed in reverse lexicographic order.
std::vector<std::vector<int>> partitions(int d, int max_parts);

enum class BasisKind { Symmetric, CyclicInvariant };

std::string to_string(BasisKind kind);

/// Canonical orbit representative: sorted descending (Symmetric) or the
/// lexicographically largest rotation (CyclicInvariant).
Exponent canonical_representative(BasisKind kind, const Exponent& e);

/// Distinct members of the orbit of e, in ascending graded-lex order.
std::vector<Exponent> orbit(BasisKind kind, const Exponent& e);

struct BasisSet {
  BasisKind kind = BasisKind::Symmetric;
  int n = 0;
  int degree = 0;
  std::vector<Exponent> representatives;
  std::vector<LaurentPoly> elements;  ///< orbit sums, unit coefficients
  std::map<Exponent, std::size_t> index;

  std::size_t size() const { return elements.size(); }
  /// Basis index of the orbit containing e, if it belongs to this basis.
  std::optional<std::size_t> locate(const Exponent& e) const;
};

/// Orbit-sum basis of homogeneous degree-d polynomials with non-negative
/// exponents that are invariant under the chosen group.
BasisSet basis(BasisKind kind, int n, int d);

struct Projection {
  std::vector<Coeff> coords;
  LaurentPoly residual;
};

/// Coordinates of p in the basis; residual is p minus their span
/// combination and is zero iff p lies in the span.
Projection project(const LaurentPoly& p, const BasisSet& basis);

}  // namespace tcsm
