#include "tcsm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "tcsm/errors.hpp"

namespace tcsm {

H1Operator::H1Operator(ModelParams params)
    : params_(std::move(params)), pairs_(interaction_pairs(params_)) {}

LaurentPoly H1Operator::apply(const LaurentPoly& p) const {
  if (p.has_beta())
    throw CoefficientOverflow("H1 applied to a beta-dependent polynomial; substitute beta first");
  const int n = p.n_vars();
  if (n != params_.n) throw DomainError("polynomial variable count differs from N");

  LaurentPoly out(n);
  for (const auto& [e, c] : p.terms()) {
    long s = 0;
    for (int x : e) s += static_cast<long>(x) * x;
    if (s != 0) out.add_term(e, c * Rational(s));
  }

  const Coeff beta = Coeff::beta();
  for (const auto& [a, b] : pairs_) {
    // (z_a + z_b) (D_a - D_b) p
    LaurentPoly numerator(n);
    for (const auto& [e, c] : p.terms()) {
      const int diff = e[a] - e[b];
      if (diff == 0) continue;
      const Coeff scaled = c * Rational(diff);
      Exponent f = e;
      ++f[a];
      numerator.add_term(f, scaled);
      --f[a];
      ++f[b];
      numerator.add_term(f, scaled);
    }
    if (numerator.is_zero()) continue;
    out += exact_divide(numerator, a, b) * beta;
  }
  return out;
}

// ---------------------------------------------------------------- pencil

Eigen::MatrixXd Pencil::a_at(double beta) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(cyc.size()), static_cast<Eigen::Index>(sym.size()));
  for (std::size_t i = 0; i < cyc.size(); ++i)
    for (std::size_t j = 0; j < sym.size(); ++j) m(i, j) = a[i][j].eval(beta);
  return m;
}

bool Pencil::closes_on_symmetric() const {
  for (std::size_t col = 0; col < sym.size(); ++col) {
    std::map<std::size_t, Coeff> seen;
    for (std::size_t row = 0; row < cyc.size(); ++row) {
      const auto owner = sym.locate(cyc.representatives[row]);
      if (!owner) return false;
      auto [it, inserted] = seen.emplace(*owner, a[row][col]);
      if (!inserted && !(it->second == a[row][col])) return false;
    }
  }
  return true;
}

Pencil build_pencil(const H1Operator& op, int degree) {
  if (degree < 0) throw DomainError("pencil degree must be >= 0");
  const int n = op.params().n;
  Pencil pencil;
  pencil.degree = degree;
  pencil.sym = basis(BasisKind::Symmetric, n, degree);
  pencil.cyc = basis(BasisKind::CyclicInvariant, n, degree);
  const std::size_t rows = pencil.cyc.size();
  const std::size_t cols = pencil.sym.size();

  pencil.a.assign(rows, std::vector<Coeff>(cols));
  pencil.e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t col = 0; col < cols; ++col) {
    const Projection proj = project(op.apply(pencil.sym.elements[col]), pencil.cyc);
    if (!proj.residual.is_zero())
      throw ProjectionResidual("H1 image left the cyclic-invariant space at degree " +
                               std::to_string(degree));
    for (std::size_t row = 0; row < rows; ++row) pencil.a[row][col] = proj.coords[row];
    for (const auto& m : orbit(BasisKind::Symmetric, pencil.sym.representatives[col]))
      pencil.e(static_cast<Eigen::Index>(*pencil.cyc.locate(m)), static_cast<Eigen::Index>(col)) =
          1.0;
  }
  return pencil;
}

PencilSolution solve_pencil(const Pencil& pencil, double beta, double tol) {
  const Eigen::MatrixXd a = pencil.a_at(beta);
  const Eigen::MatrixXd& e = pencil.e;
  const Eigen::MatrixXd ete = e.transpose() * e;

  PencilSolution out;
  const Eigen::VectorXd diag = ete.diagonal();
  if (diag.size() == 0) return out;
  if (diag.minCoeff() <= 0.0) throw RankDeficient("embedding matrix has an empty column");
  out.embedding_condition = diag.maxCoeff() / diag.minCoeff();
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(ete);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-12)
    throw RankDeficient("E^T E is numerically singular");

  const Eigen::MatrixXd square = ldlt.solve(e.transpose() * a);
  const Eigen::EigenSolver<Eigen::MatrixXd> es(square);
  if (es.info() != Eigen::Success) throw RankDeficient("eigen-solve of E^+ A failed");

  const Eigen::MatrixXcd ac = a.cast<cplx>();
  const Eigen::MatrixXcd ec = e.cast<cplx>();
  for (Eigen::Index k = 0; k < square.rows(); ++k) {
    EigenPair pair;
    pair.lambda = es.eigenvalues()(k);
    pair.vector = es.eigenvectors().col(k);
    const Eigen::VectorXcd ev = ec * pair.vector;
    pair.residual = (ac * pair.vector - pair.lambda * ev).norm() / ev.norm();
    if (pair.residual < tol)
      out.certified.push_back(std::move(pair));
    else if (pair.residual > kSpuriousThreshold)
      out.spurious.push_back(std::move(pair));
    else
      out.ambiguous.push_back(std::move(pair));
  }
  auto by_lambda = [](const EigenPair& x, const EigenPair& y) {
    if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
    return x.lambda.imag() < y.lambda.imag();
  };
  std::sort(out.certified.begin(), out.certified.end(), by_lambda);
  std::sort(out.spurious.begin(), out.spurious.end(), by_lambda);
  std::sort(out.ambiguous.begin(), out.ambiguous.end(), by_lambda);
  return out;
}

std::vector<ClosedLevel> closed_form_levels(const ModelParams& params) {
  const double nu = params.neighbors;
  const double b = params.beta;
  const int n = params.n;
  return {
      {"e1", 1, 1.0 + nu * b},
      {"eNm1", n - 1, (n - 1) + nu * b},
      {"eN", n, static_cast<double>(n)},
      {"combo", n, n + 2.0 * (1.0 + nu * b)},
      {"nondeg0", 0, 2.0 + 2.0 * nu * b},
  };
}

SpectrumReport spectrum(const H1Operator& op, int degree, double tol) {
  const auto& p = op.params();
  const Pencil pencil = build_pencil(op, degree);
  const PencilSolution sol = solve_pencil(pencil, p.beta, tol);

  SpectrumReport rep;
  rep.n = p.n;
  rep.r = p.r;
  rep.beta = p.beta;
  rep.length = p.length;
  rep.degree = degree;
  rep.dim_sym = pencil.sym.size();
  rep.dim_cyc = pencil.cyc.size();
  rep.certified_count = sol.certified.size();
  rep.spurious_count = sol.spurious.size();
  rep.ambiguous_count = sol.ambiguous.size();
  rep.momentum = 2.0 * std::numbers::pi / p.length * degree;
  rep.closes_on_symmetric = pencil.closes_on_symmetric();
  rep.tol = tol;
  for (const auto& s : sol.spurious)
    rep.min_spurious_residual =
        std::min(rep.min_spurious_residual.value_or(s.residual), s.residual);

  const auto closed = closed_form_levels(p);
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-8 * (1.0 + std::abs(y)); };
  for (const auto& pair : sol.certified) {
    if (!rep.levels.empty() && close(pair.lambda.real(), rep.levels.back().lambda) &&
        close(pair.lambda.imag(), rep.levels.back().imag)) {
      auto& level = rep.levels.back();
      ++level.multiplicity;
      level.residual = std::max(level.residual, pair.residual);
      continue;
    }
    SpectrumLevel level;
    level.lambda = pair.lambda.real();
    level.imag = pair.lambda.imag();
    level.residual = pair.residual;
    for (const auto& c : closed)
      if (c.degree == degree && close(level.lambda, c.value) && std::abs(level.imag) < 1e-8)
        level.matched.push_back(c.name);
    rep.levels.push_back(std::move(level));
  }
  return rep;
}

// ---------------------------------------------------------------- closed-form states

LaurentPoly state_polynomial(StateKind kind, const ModelParams& params, const Rational& beta) {
  const int n = params.n;
  const Rational kappa = Rational(n) / (1 + params.neighbors * beta);
  auto inverse_sum = [n] { return power_sum(-1, n); };
  switch (kind) {
    case StateKind::Ground: return LaurentPoly::constant(n, Coeff(1));
    case StateKind::E1: return elementary_symmetric(1, n);
    case StateKind::ENm1: return elementary_symmetric(n - 1, n);
    case StateKind::EN: return elementary_symmetric(n, n);
    case StateKind::Combo:
      return elementary_symmetric(1, n) * elementary_symmetric(n - 1, n) -
             elementary_symmetric(n, n) * Coeff(kappa);
    case StateKind::CosSum:
      return (elementary_symmetric(1, n) + inverse_sum()) * Coeff(Rational(1, 2));
    case StateKind::NonDegZero:
      return elementary_symmetric(1, n) * inverse_sum() - LaurentPoly::constant(n, Coeff(kappa));
    default:
      throw DomainError("no rational polynomial form for state '" + to_string(kind) + "'");
  }
}

PhiPolynomial to_phi_polynomial(const LaurentPoly& p, double beta) {
  PhiPolynomial out;
  out.reserve(p.size());
  for (const auto& [e, c] : p.terms()) out.push_back({e, cplx(c.eval(beta), 0.0)});
  return out;
}

PhiPolynomial to_phi_polynomial(const BasisSet& sym, const Eigen::VectorXcd& coords) {
  PhiPolynomial out;
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const cplx c = coords(static_cast<Eigen::Index>(i));
    if (c == cplx{}) continue;
    for (const auto& [e, unit] : sym.elements[i].terms()) out.push_back({e, c});
  }
  return out;
}

// ---------------------------------------------------------------- exact checks

ExactEigenCheck exact_eigenvalue(const H1Operator& op, const LaurentPoly& p, const Rational& beta) {
  if (p.is_zero()) throw DomainError("the zero polynomial is not an eigenvector");
  const LaurentPoly image = op.apply(p).substitute_beta(beta);
  const auto& [lead, lead_coeff] = *p.terms().begin();
  ExactEigenCheck out;
  out.lambda = image.coefficient(lead).constant() / lead_coeff.constant();
  out.residual = image - p * Coeff(out.lambda);
  out.is_eigen = out.residual.is_zero();
  return out;
}

ParityResult parity_partner(const H1Operator& op, const LaurentPoly& p, const Rational& beta) {
  const auto degree = p.degree();
  if (!degree) throw DomainError("parity_partner needs a homogeneous polynomial");
  ParityResult out;
  out.degree = *degree;
  out.kappa = *degree;
  out.partner_kappa = -*degree;

  const ExactEigenCheck base = exact_eigenvalue(op, p, beta);
  out.lambda = base.lambda;

  out.partner = p.inverted();
  const ExactEigenCheck partner = exact_eigenvalue(op, out.partner, beta);
  out.partner_is_eigen = partner.is_eigen;
  out.partner_lambda = partner.lambda;

  int boost = 0;
  for (const auto& [e, c] : out.partner.terms())
    for (int x : e) boost = std::max(boost, -x);
  out.boost = boost;
  out.reduced_partner = out.partner.boosted(boost);
  out.reduced_lambda = exact_eigenvalue(op, out.reduced_partner, beta).lambda;

  const auto& [lead, lead_coeff] = *p.terms().begin();
  const Coeff ratio = out.partner.coefficient(lead);
  if (!ratio.is_zero()) {
    const Rational s = ratio.constant() / lead_coeff.constant();
    out.self_partner = (out.partner - p * Coeff(s)).is_zero();
  }
  const bool same_energy = base.is_eigen && partner.is_eigen && partner.lambda == base.lambda;
  out.degenerate_pair = same_energy && !out.self_partner;
  out.non_degenerate = same_energy && out.self_partner;
  return out;
}

BoostResult boost_shift_check(const H1Operator& op, const LaurentPoly& p, int q,
                              const Rational& beta) {
  const auto degree = p.degree();
  if (!degree) throw DomainError("boost_shift_check needs a homogeneous polynomial");
  const std::int64_t n = op.params().n;
  const std::int64_t d = *degree;
  BoostResult out;
  out.degree = *degree;
  out.q = q;
  const ExactEigenCheck base = exact_eigenvalue(op, p, beta);
  const ExactEigenCheck boosted = exact_eigenvalue(op, p.boosted(q), beta);
  out.certified = base.is_eigen && boosted.is_eigen;
  out.lambda_base = base.lambda;
  out.lambda_boosted = boosted.lambda;
  out.shift = boosted.lambda - base.lambda;
  out.operator_shift = 2 * q * d + n * q * q;
  out.alt_shift = 2 * n * q * d + n * n * q * q;
  out.matches_operator = out.certified && out.shift == Rational(out.operator_shift);
  out.matches_alt = out.certified && out.shift == Rational(out.alt_shift);
  return out;
}

}  // namespace tcsm
