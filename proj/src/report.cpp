#include "tcsm/report.hpp"

#include <numbers>

namespace tcsm {

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string rational_string(const Rational& q) { return q.get_str(); }

json to_json(const ModelParams& p) {
  json j;
  j["N"] = p.n;
  j["r"] = p.r;
  j["beta"] = p.beta;
  j["L"] = p.length;
  j["g"] = p.g;
  j["G"] = p.G;
  j["c"] = p.c;
  j["r_eff"] = p.r_eff;
  j["k"] = p.k ? json(*p.k) : json(nullptr);
  j["regime"] = to_string(p.regime);
  j["neighbors"] = p.neighbors;
  return j;
}

json to_json(const UnitConversion& u) {
  json j;
  j["factor"] = u.factor;
  j["factor_times_L2_over_pi2"] = u.factor * u.length * u.length / (std::numbers::pi * std::numbers::pi);
  j["alt_factor_2pi_over_L_squared"] = u.alt_factor;
  j["calibration"] = {{"N", u.calibration_n},
                      {"r", 1},
                      {"beta", u.calibration_beta},
                      {"state", "e1"},
                      {"relative_spread", u.calibration_spread}};
  j["note"] = u.note();
  return j;
}

json to_json(const ResidualReport& r) {
  json j;
  j["state"] = r.state;
  j["N"] = r.n;
  j["r"] = r.r;
  j["beta"] = r.beta;
  j["L"] = r.length;
  j["samples"] = r.samples;
  j["rejected_nodes"] = r.rejected_nodes;
  j["acceptance_rate"] = r.acceptance_rate;
  j["energy_mean"] = r.energy_mean;
  j["energy_stddev"] = r.energy_stddev;
  j["relative_spread"] = r.relative_spread();
  j["max_abs_dev"] = r.max_abs_dev;
  j["max_imag_ratio"] = r.max_imag_ratio;
  j["ground_energy"] = r.ground_energy;
  j["predicted"] = optional_number(r.predicted);
  j["prediction_error"] = optional_number(r.prediction_error());
  j["tol"] = r.tol;
  j["verdict"] = to_string(r.verdict);
  j["conversion"] = optional_number(r.conversion);
  j["reduced_mean"] = optional_number(r.reduced_mean);
  j["unit_note"] = r.unit_note;
  return j;
}

json to_json(const SpectrumReport& s) {
  json j;
  j["N"] = s.n;
  j["r"] = s.r;
  j["beta"] = s.beta;
  j["L"] = s.length;
  j["degree"] = s.degree;
  j["momentum"] = s.momentum;
  j["dim_sym"] = s.dim_sym;
  j["dim_cyc"] = s.dim_cyc;
  j["closes_on_symmetric"] = s.closes_on_symmetric;
  j["tol"] = s.tol;
  j["certified_count"] = s.certified_count;
  j["spurious_count"] = s.spurious_count;
  j["ambiguous_count"] = s.ambiguous_count;
  j["min_spurious_residual"] = optional_number(s.min_spurious_residual);
  json levels = json::array();
  for (const auto& l : s.levels) {
    levels.push_back({{"lambda", l.lambda},
                      {"imag", l.imag},
                      {"multiplicity", l.multiplicity},
                      {"residual", l.residual},
                      {"matched", l.matched}});
  }
  j["eigenvalues"] = std::move(levels);
  return j;
}

json to_json(const ParityResult& p) {
  json j;
  j["degree"] = p.degree;
  j["kappa"] = p.kappa;
  j["partner_kappa"] = p.partner_kappa;
  j["lambda"] = rational_string(p.lambda);
  j["partner_is_eigen"] = p.partner_is_eigen;
  j["partner_lambda"] = rational_string(p.partner_lambda);
  j["boost"] = p.boost;
  j["reduced_partner_lambda"] = rational_string(p.reduced_lambda);
  j["self_partner"] = p.self_partner;
  j["degenerate_pair"] = p.degenerate_pair;
  j["non_degenerate"] = p.non_degenerate;
  j["partner"] = p.partner.size() <= 64 ? json(p.partner.to_string()) : json(nullptr);
  return j;
}

json to_json(const BoostResult& b) {
  json j;
  j["degree"] = b.degree;
  j["q"] = b.q;
  j["certified"] = b.certified;
  j["lambda_base"] = rational_string(b.lambda_base);
  j["lambda_boosted"] = rational_string(b.lambda_boosted);
  j["shift"] = rational_string(b.shift);
  j["shift_2qd_plus_Nq2"] = b.operator_shift;
  j["shift_2Nqd_plus_Nq_squared"] = b.alt_shift;
  j["matches_2qd_plus_Nq2"] = b.matches_operator;
  j["matches_2Nqd_plus_Nq_squared"] = b.matches_alt;
  return j;
}

}  // namespace tcsm
