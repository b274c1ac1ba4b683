#include "tcsm/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "tcsm/errors.hpp"
#include "tcsm/jet.hpp"

namespace tcsm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSinFloor = 1e-300;
const cplx kI{0.0, 1.0};

double wrap(double x, double length) {
  double y = std::fmod(x, length);
  if (y < 0) y += length;
  if (y >= length) y -= length;
  return y;
}

/// pi ((x_a - x_b) mod L) / L in [0, pi)
double pair_angle(double xa, double xb, double length) {
  return kPi * wrap(xa - xb, length) / length;
}

double checked_sin(double theta, int a, int b) {
  const double s = std::sin(theta);
  if (!(s >= kSinFloor))
    throw SeparationUnderflow("particles " + std::to_string(a + 1) + " and " +
                              std::to_string(b + 1) + " coincide numerically");
  return s;
}

}  // namespace

// ---------------------------------------------------------------- configurations

double min_cyclic_separation(const std::vector<double>& x, double length) {
  std::vector<double> s = x;
  for (double& v : s) v = wrap(v, length);
  std::sort(s.begin(), s.end());
  double best = length;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) best = std::min(best, s[i + 1] - s[i]);
  if (s.size() >= 2) best = std::min(best, s.front() + length - s.back());
  return best;
}

Configuration make_configuration(const ModelParams& params, std::vector<double> x, double floor) {
  if (static_cast<int>(x.size()) != params.n)
    throw DomainError("configuration must hold exactly N positions");
  for (double& v : x) {
    if (!std::isfinite(v)) throw DomainError("non-finite particle position");
    v = wrap(v, params.length);
  }
  Configuration c;
  c.min_sep = min_cyclic_separation(x, params.length);
  if (!(c.min_sep > floor)) throw DomainError("configuration violates the separation floor");
  c.x = std::move(x);
  return c;
}

Configuration equally_spaced(const ModelParams& params, double offset) {
  std::vector<double> x(static_cast<std::size_t>(params.n));
  for (int j = 0; j < params.n; ++j) x[j] = offset + params.length * j / params.n;
  return make_configuration(params, std::move(x));
}

// ---------------------------------------------------------------- state specs

std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::Ground: return "ground";
    case StateKind::E1: return "e1";
    case StateKind::ENm1: return "eNm1";
    case StateKind::EN: return "eN";
    case StateKind::Combo: return "combo";
    case StateKind::CosSum: return "cos";
    case StateKind::SinSum: return "sin";
    case StateKind::NonDegZero: return "nondeg0";
    case StateKind::Boosted: return "boosted";
    case StateKind::Poly: return "poly";
  }
  return "?";
}

std::optional<StateKind> parse_state_kind(std::string_view name) {
  for (auto kind : {StateKind::Ground, StateKind::E1, StateKind::ENm1, StateKind::EN,
                    StateKind::Combo, StateKind::CosSum, StateKind::SinSum,
                    StateKind::NonDegZero, StateKind::Boosted, StateKind::Poly})
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

StateSpec StateSpec::of(StateKind kind) {
  if (kind == StateKind::Boosted || kind == StateKind::Poly)
    throw std::invalid_argument("use StateSpec::boosted / StateSpec::polynomial");
  StateSpec s;
  s.kind = kind;
  return s;
}

StateSpec StateSpec::boosted(const StateSpec& base, int q) {
  StateSpec s;
  s.kind = StateKind::Boosted;
  s.q = q;
  s.base = std::make_shared<const StateSpec>(base);
  return s;
}

StateSpec StateSpec::polynomial(PhiPolynomial terms) {
  StateSpec s;
  s.kind = StateKind::Poly;
  s.poly = std::make_shared<const PhiPolynomial>(std::move(terms));
  return s;
}

std::string StateSpec::label() const {
  if (kind == StateKind::Boosted) return "boost(" + base->label() + ",q=" + std::to_string(q) + ")";
  if (kind == StateKind::Poly) return "poly[" + std::to_string(poly->size()) + " terms]";
  return to_string(kind);
}

double combo_constant(const ModelParams& params) {
  return params.n / (1.0 + params.neighbors * params.beta);
}

cplx PhiValue::laplacian_ratio() const { return std::accumulate(second.begin(), second.end(), cplx{}); }

// ---------------------------------------------------------------- analytic phi

namespace {

/// phi with D_m phi / phi and D_m^2 phi / phi, D_m = z_m d/dz_m.
struct DRatios {
  cplx value;
  std::vector<cplx> d1;
  std::vector<cplx> d2;
  double scale = 1.0;
};

/// e_0..e_n of the given values.
std::vector<cplx> elementary_values(const std::vector<cplx>& z, int skip = -1) {
  std::vector<cplx> e(z.size() + 1, cplx{});
  e[0] = 1.0;
  int used = 0;
  for (int j = 0; j < static_cast<int>(z.size()); ++j) {
    if (j == skip) continue;
    ++used;
    for (int k = used; k >= 1; --k) e[k] += z[j] * e[k - 1];
  }
  return e;
}

struct SymmetricData {
  int n = 0;
  std::vector<cplx> z;
  std::vector<cplx> e;                 // e_k(z)
  std::vector<std::vector<cplx>> em;   // e_k(z without z_m)
};

SymmetricData symmetric_data(const ModelParams& params, const Configuration& config) {
  SymmetricData s;
  s.n = params.n;
  s.z.resize(params.n);
  for (int j = 0; j < params.n; ++j)
    s.z[j] = std::polar(1.0, 2.0 * kPi * config.x[j] / params.length);
  s.e = elementary_values(s.z);
  s.em.resize(params.n);
  for (int m = 0; m < params.n; ++m) s.em[m] = elementary_values(s.z, m);
  return s;
}

/// value, D_m, D_m^2 of a single e_k (not ratios)
struct Raw {
  cplx value;
  std::vector<cplx> d1;
  std::vector<cplx> d2;
};

Raw raw_elementary(const SymmetricData& s, int k) {
  Raw r{s.e[k], std::vector<cplx>(s.n), std::vector<cplx>(s.n)};
  for (int m = 0; m < s.n; ++m) {
    // D_m e_k = z_m e_{k-1}(z \ z_m), and D_m applied again leaves it unchanged
    const cplx v = k >= 1 ? s.z[m] * s.em[m][k - 1] : cplx{};
    r.d1[m] = v;
    r.d2[m] = v;
  }
  return r;
}

/// sum_j 1/z_j
Raw raw_inverse_sum(const SymmetricData& s) {
  Raw r{cplx{}, std::vector<cplx>(s.n), std::vector<cplx>(s.n)};
  for (int m = 0; m < s.n; ++m) {
    const cplx inv = 1.0 / s.z[m];
    r.value += inv;
    r.d1[m] = -inv;
    r.d2[m] = inv;
  }
  return r;
}

Raw product(const Raw& a, const Raw& b) {
  Raw r{a.value * b.value, std::vector<cplx>(a.d1.size()), std::vector<cplx>(a.d1.size())};
  for (std::size_t m = 0; m < a.d1.size(); ++m) {
    r.d1[m] = a.d1[m] * b.value + a.value * b.d1[m];
    r.d2[m] = a.d2[m] * b.value + 2.0 * a.d1[m] * b.d1[m] + a.value * b.d2[m];
  }
  return r;
}

Raw linear(const Raw& a, cplx ca, const Raw& b, cplx cb) {
  Raw r{ca * a.value + cb * b.value, std::vector<cplx>(a.d1.size()),
        std::vector<cplx>(a.d1.size())};
  for (std::size_t m = 0; m < a.d1.size(); ++m) {
    r.d1[m] = ca * a.d1[m] + cb * b.d1[m];
    r.d2[m] = ca * a.d2[m] + cb * b.d2[m];
  }
  return r;
}

DRatios to_ratios(const Raw& raw, double scale) {
  DRatios out{raw.value, raw.d1, raw.d2, scale};
  if (std::abs(raw.value) < kNodeThreshold * scale)
    throw NodeProximity("phi vanishes at this configuration (|phi| = " +
                        std::to_string(std::abs(raw.value)) + ")");
  for (std::size_t m = 0; m < raw.d1.size(); ++m) {
    out.d1[m] /= raw.value;
    out.d2[m] /= raw.value;
  }
  return out;
}

DRatios d_ratios(const StateSpec& spec, const ModelParams& params, const SymmetricData& s) {
  const int n = params.n;
  const double kappa = combo_constant(params);
  switch (spec.kind) {
    case StateKind::Ground:
      return DRatios{1.0, std::vector<cplx>(n), std::vector<cplx>(n), 1.0};
    case StateKind::E1:
      return to_ratios(raw_elementary(s, 1), n);
    case StateKind::ENm1:
      return to_ratios(raw_elementary(s, n - 1), n);
    case StateKind::EN:
      return to_ratios(raw_elementary(s, n), 1.0);
    case StateKind::Combo: {
      const Raw ab = product(raw_elementary(s, 1), raw_elementary(s, n - 1));
      return to_ratios(linear(ab, 1.0, raw_elementary(s, n), -kappa), double(n) * n + kappa);
    }
    case StateKind::CosSum:
      return to_ratios(linear(raw_elementary(s, 1), 0.5, raw_inverse_sum(s), 0.5), n);
    case StateKind::SinSum:
      return to_ratios(linear(raw_elementary(s, 1), -0.5 * kI, raw_inverse_sum(s), 0.5 * kI), n);
    case StateKind::NonDegZero: {
      Raw r = product(raw_elementary(s, 1), raw_inverse_sum(s));
      r.value -= kappa;
      return to_ratios(r, double(n) * n + kappa);
    }
    case StateKind::Boosted: {
      DRatios base = d_ratios(*spec.base, params, s);
      const double q = spec.q;
      base.value *= std::pow(s.e[n], spec.q);
      for (int m = 0; m < n; ++m) {
        base.d2[m] = q * q + 2.0 * q * base.d1[m] + base.d2[m];
        base.d1[m] = q + base.d1[m];
      }
      return base;
    }
    case StateKind::Poly: {
      Raw r{cplx{}, std::vector<cplx>(n), std::vector<cplx>(n)};
      double scale = 0.0;
      for (const auto& term : *spec.poly) {
        cplx mono = term.c;
        for (int j = 0; j < n; ++j) mono *= std::pow(s.z[j], term.e[j]);
        r.value += mono;
        scale += std::abs(term.c);
        for (int m = 0; m < n; ++m) {
          r.d1[m] += double(term.e[m]) * mono;
          r.d2[m] += double(term.e[m]) * term.e[m] * mono;
        }
      }
      return to_ratios(r, scale);
    }
  }
  throw std::logic_error("unhandled state kind");
}

void check_config(const ModelParams& params, const Configuration& config) {
  if (static_cast<int>(config.x.size()) != params.n)
    throw DomainError("configuration size does not match N");
}

}  // namespace

PhiValue phi_eval(const StateSpec& spec, const ModelParams& params, const Configuration& config) {
  check_config(params, config);
  const SymmetricData s = symmetric_data(params, config);
  const DRatios r = d_ratios(spec, params, s);
  // d/dx_m = (2 pi i / L) D_m
  const cplx w = 2.0 * kPi * kI / params.length;
  PhiValue out;
  out.value = r.value;
  out.scale = r.scale;
  out.grad.resize(params.n);
  out.second.resize(params.n);
  for (int m = 0; m < params.n; ++m) {
    out.grad[m] = w * r.d1[m];
    out.second[m] = w * w * r.d2[m];
  }
  return out;
}

// ---------------------------------------------------------------- generic evaluator

namespace {

template <class T>
T ipow(const T& x, int e) {
  T acc(cplx(1.0));
  const T base = e >= 0 ? x : T(cplx(1.0)) / x;
  for (int i = 0; i < std::abs(e); ++i) acc *= base;
  return acc;
}

/// phi written out directly in terms of the z_j, generic over T.
template <class T>
T evaluate_state(const StateSpec& spec, const ModelParams& params, const std::vector<T>& z) {
  const int n = params.n;
  auto esym = [&](int k) {
    std::vector<T> e(n + 1, T(cplx(0.0)));
    e[0] = T(cplx(1.0));
    for (int j = 0; j < n; ++j)
      for (int kk = j + 1; kk >= 1; --kk) e[kk] += z[j] * e[kk - 1];
    return e[k];
  };
  auto inverse_sum = [&] {
    T acc(cplx(0.0));
    for (const T& zj : z) acc += T(cplx(1.0)) / zj;
    return acc;
  };
  const T kappa(cplx(combo_constant(params)));
  switch (spec.kind) {
    case StateKind::Ground: return T(cplx(1.0));
    case StateKind::E1: return esym(1);
    case StateKind::ENm1: return esym(n - 1);
    case StateKind::EN: return esym(n);
    case StateKind::Combo: return esym(1) * esym(n - 1) - kappa * esym(n);
    case StateKind::CosSum: return T(cplx(0.5)) * (esym(1) + inverse_sum());
    case StateKind::SinSum: return T(-0.5 * kI) * (esym(1) - inverse_sum());
    case StateKind::NonDegZero: return esym(1) * inverse_sum() - kappa;
    case StateKind::Boosted:
      return ipow(esym(n), spec.q) * evaluate_state(*spec.base, params, z);
    case StateKind::Poly: {
      T acc(cplx(0.0));
      for (const auto& term : *spec.poly) {
        T mono(term.c);
        for (int j = 0; j < n; ++j)
          if (term.e[j] != 0) mono *= ipow(z[j], term.e[j]);
        acc += mono;
      }
      return acc;
    }
  }
  throw std::logic_error("unhandled state kind");
}

}  // namespace

cplx phi_value(const StateSpec& spec, const ModelParams& params, const Configuration& config) {
  check_config(params, config);
  std::vector<cplx> z(params.n);
  for (int j = 0; j < params.n; ++j)
    z[j] = std::polar(1.0, 2.0 * kPi * config.x[j] / params.length);
  return evaluate_state(spec, params, z);
}

PhiValue phi_eval_dual(const StateSpec& spec, const ModelParams& params,
                       const Configuration& config) {
  check_config(params, config);
  using J = Jet<cplx>;
  const int n = params.n;
  const cplx w = 2.0 * kPi * kI / params.length;
  PhiValue out;
  out.grad.resize(n);
  out.second.resize(n);
  for (int m = 0; m < n; ++m) {
    std::vector<J> z(n);
    for (int j = 0; j < n; ++j) {
      const J u(w * config.x[j], j == m ? w : cplx{}, cplx{});
      z[j] = exp(u);
    }
    const J f = evaluate_state(spec, params, z);
    out.value = f.v;
    if (std::abs(f.v) == 0.0) throw NodeProximity("phi vanishes at this configuration");
    out.grad[m] = f.d / f.v;
    out.second[m] = f.dd / f.v;
  }
  return out;
}

// ---------------------------------------------------------------- ground state

double GroundDerivatives::laplacian_ratio() const {
  double acc = 0.0;
  for (std::size_t m = 0; m < grad.size(); ++m) acc += grad[m] * grad[m] + second[m];
  return acc;
}

double log_psi0(const Model& model, const Configuration& config) {
  const auto& p = model.params();
  check_config(p, config);
  double acc = 0.0;
  for (const auto& [a, b] : model.pairs())
    acc += std::log(checked_sin(pair_angle(config.x[a], config.x[b], p.length), a, b));
  return p.beta * acc;
}

GroundDerivatives ground_derivatives(const Model& model, const Configuration& config) {
  const auto& p = model.params();
  check_config(p, config);
  const double k = kPi / p.length;
  GroundDerivatives out;
  out.grad.assign(p.n, 0.0);
  out.second.assign(p.n, 0.0);
  double log_acc = 0.0;
  for (const auto& [a, b] : model.pairs()) {
    const double theta = pair_angle(config.x[a], config.x[b], p.length);
    const double s = checked_sin(theta, a, b);
    const double cot = std::cos(theta) / s;
    const double csc2 = 1.0 / (s * s);
    log_acc += std::log(s);
    out.grad[a] += cot;
    out.grad[b] -= cot;
    out.second[a] -= csc2;
    out.second[b] -= csc2;
  }
  out.log_mod = p.beta * log_acc;
  for (int m = 0; m < p.n; ++m) {
    out.grad[m] *= p.beta * k;
    out.second[m] *= p.beta * k * k;
  }
  return out;
}

std::vector<double> grad_log_psi0(const Model& model, const Configuration& config) {
  return ground_derivatives(model, config).grad;
}

double laplacian_ratio_psi0(const Model& model, const Configuration& config) {
  return ground_derivatives(model, config).laplacian_ratio();
}

GroundDerivatives ground_derivatives_dual(const Model& model, const Configuration& config) {
  const auto& p = model.params();
  check_config(p, config);
  using J = Jet<double>;
  const double k = kPi / p.length;
  GroundDerivatives out;
  out.grad.resize(p.n);
  out.second.resize(p.n);
  for (int m = 0; m < p.n; ++m) {
    J acc;
    for (const auto& [a, b] : model.pairs()) {
      const double raw = config.x[a] - config.x[b];
      const double shift = wrap(raw, p.length) - raw;  // constant: no derivative
      const J xa = a == m ? J::variable(config.x[a]) : J(config.x[a]);
      const J xb = b == m ? J::variable(config.x[b]) : J(config.x[b]);
      const J theta = J(k) * (xa - xb + J(shift));
      checked_sin(theta.v, a, b);
      acc += log(sin(theta));
    }
    acc *= J(p.beta);
    out.log_mod = acc.v;
    out.grad[m] = acc.d;
    out.second[m] = acc.dd;
  }
  return out;
}

AmplitudeData amplitude(const Model& model, const StateSpec& spec, const Configuration& config) {
  const GroundDerivatives g = ground_derivatives(model, config);
  const PhiValue phi = phi_eval(spec, model.params(), config);
  AmplitudeData out;
  out.log_mod = g.log_mod;
  const double mag = std::abs(phi.value);
  out.phase = mag > 0 ? phi.value / mag : cplx{1.0, 0.0};
  out.grad.resize(model.n());
  cplx cross{};
  for (int m = 0; m < model.n(); ++m) {
    out.grad[m] = g.grad[m] + phi.grad[m];
    cross += g.grad[m] * phi.grad[m];
  }
  out.lap_ratio = g.laplacian_ratio() + 2.0 * cross + phi.laplacian_ratio();
  return out;
}

}  // namespace tcsm
