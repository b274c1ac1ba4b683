#pragma once

// Ground state psi0 = prod_{pairs} sin^beta(pi (x_a - x_b)/L) and candidate
// excited states psi = psi0 * phi, evaluated in the log domain.
//
// Every quantity comes from two independent routes: closed-form
// derivatives, and second-order jets pushed through the plain evaluator.

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcsm/model.hpp"

namespace tcsm {

using cplx = std::complex<double>;

struct Configuration {
  std::vector<double> x;  ///< positions in [0, L)
  double min_sep = 0.0;   ///< smallest cyclic pairwise separation
};

double min_cyclic_separation(const std::vector<double>& x, double length);

/// Wraps positions into [0, L) and measures min_sep. Throws DomainError
/// when the wrong count is supplied or min_sep <= floor.
Configuration make_configuration(const ModelParams& params, std::vector<double> x,
                                 double floor = 0.0);

/// x_j = offset + j L / N
Configuration equally_spaced(const ModelParams& params, double offset = 0.0);

enum class StateKind { Ground, E1, ENm1, EN, Combo, CosSum, SinSum, NonDegZero, Boosted, Poly };

std::string to_string(StateKind kind);
std::optional<StateKind> parse_state_kind(std::string_view name);

/// sum_k c_k z^{e_k}, numeric coefficients
struct PhiTerm {
  std::vector<int> e;
  cplx c;
};
using PhiPolynomial = std::vector<PhiTerm>;

struct StateSpec {
  StateKind kind = StateKind::Ground;
  int q = 0;                                  ///< Boosted only
  std::shared_ptr<const StateSpec> base;      ///< Boosted only
  std::shared_ptr<const PhiPolynomial> poly;  ///< Poly only

  static StateSpec of(StateKind kind);
  static StateSpec boosted(const StateSpec& base, int q);
  static StateSpec polynomial(PhiPolynomial terms);

  std::string label() const;
};

/// phi and its per-coordinate logarithmic derivatives in x.
struct PhiValue {
  cplx value;
  std::vector<cplx> grad;    ///< (d phi / d x_m) / phi
  std::vector<cplx> second;  ///< (d^2 phi / d x_m^2) / phi
  double scale = 1.0;        ///< upper bound on |phi| used for node detection

  cplx laplacian_ratio() const;
};

/// Relative threshold |phi| < kNodeThreshold * scale for NodeProximity.
inline constexpr double kNodeThreshold = 1e-10;

/// N / (1 + neighbors * beta): constant of the two-excitation states.
double combo_constant(const ModelParams& params);

PhiValue phi_eval(const StateSpec& spec, const ModelParams& params, const Configuration& config);
PhiValue phi_eval_dual(const StateSpec& spec, const ModelParams& params,
                       const Configuration& config);

/// Plain value of phi, no derivatives.
cplx phi_value(const StateSpec& spec, const ModelParams& params, const Configuration& config);

struct GroundDerivatives {
  double log_mod = 0.0;
  std::vector<double> grad;    ///< d log psi0 / d x_m
  std::vector<double> second;  ///< d^2 log psi0 / d x_m^2

  /// Laplacian(psi0) / psi0
  double laplacian_ratio() const;
};

double log_psi0(const Model& model, const Configuration& config);
std::vector<double> grad_log_psi0(const Model& model, const Configuration& config);
double laplacian_ratio_psi0(const Model& model, const Configuration& config);

GroundDerivatives ground_derivatives(const Model& model, const Configuration& config);
GroundDerivatives ground_derivatives_dual(const Model& model, const Configuration& config);

struct AmplitudeData {
  double log_mod = 0.0;  ///< log |psi0| (phi is not folded in)
  cplx phase{1.0, 0.0};  ///< phi / |phi|
  std::vector<cplx> grad;
  cplx lap_ratio;        ///< Laplacian(psi) / psi
};

AmplitudeData amplitude(const Model& model, const StateSpec& spec, const Configuration& config);

}  // namespace tcsm
