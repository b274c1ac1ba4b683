#pragma once

// Model parameters and interaction geometry of the truncated-range
// Calogero-Sutherland model on a circle.
//
// Particle indices are 0-based internally; serialized output is 1-based.

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace tcsm {

enum class Regime { Truncated, Full };

std::string to_string(Regime regime);

struct ModelParams {
  int n = 0;       ///< particle count
  int r = 0;       ///< requested interaction range
  double length = 2.0 * std::numbers::pi;
  double beta = 1.0;

  double g = 0.0;  ///< two-body coupling beta(beta-1)
  double G = 0.0;  ///< three-body coupling beta^2
  int c = 0;       ///< floor(N/2)
  int r_eff = 0;   ///< min(r, floor(N/2))
  std::optional<int> k;  ///< boundary parameter, only set when Truncated
  Regime regime = Regime::Truncated;
  int neighbors = 0;  ///< neighbor count of every particle (2 r_eff, or N-1 when Full)
};

/// Validates (N, r, L, beta) and fills in all derived quantities.
ModelParams derive_params(int n, int r, double length = 2.0 * std::numbers::pi,
                          double beta = 1.0);

/// Cyclic index distance min(|a-b|, N-|a-b|).
inline int cyclic_distance(int a, int b, int n) {
  int d = a > b ? a - b : b - a;
  return d < n - d ? d : n - d;
}

struct Pair {
  int a = 0;
  int b = 0;  ///< b = a + d (mod N) for some 1 <= d <= r_eff
  friend bool operator==(const Pair&, const Pair&) = default;
};

/// Three-body term cot(theta_ij) cot(theta_jk) with center j.
struct Triple {
  int i = 0;
  int j = 0;
  int k = 0;
  friend bool operator==(const Triple&, const Triple&) = default;
};

using PairList = std::vector<Pair>;
using TripleList = std::vector<Triple>;

/// Pairs ordered by (d, a); antipodal pairs appear once.
PairList interaction_pairs(const ModelParams& params);

/// Center-designated triples, ordered by (j, i, k) with i < k.
TripleList three_body_triples(const ModelParams& params);

/// Number of 3-sets whose members are pairwise within range.
std::int64_t closed_triple_count(const ModelParams& params);

/// (N/2)(r-k)(r+k+1). Throws DomainError in the Full regime.
std::int64_t triple_count_formula(const ModelParams& params);

struct GroundEnergy {
  std::int64_t reduced = 0;  ///< in units of beta^2 pi^2 / L^2
  double physical = 0.0;
};

/// Closed-form ground-state energy.
GroundEnergy ground_energy(const ModelParams& params);

/// Ground-state energy as |pairs| + |closed triples| (in beta^2 pi^2/L^2).
/// Independent of the closed form; every closed 3-set contributes one unit.
std::int64_t ground_energy_by_counting(const ModelParams& params);

/// beta^2 pi^2 / L^2
double energy_unit(const ModelParams& params);

/// Params together with their interaction geometry, computed once.
class Model {
 public:
  explicit Model(ModelParams params);

  const ModelParams& params() const { return params_; }
  const PairList& pairs() const { return pairs_; }
  const TripleList& triples() const { return triples_; }
  /// neighbor lists, sorted
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
  int n() const { return params_.n; }

 private:
  ModelParams params_;
  PairList pairs_;
  TripleList triples_;
  std::vector<std::vector<int>> adjacency_;
};

}  // namespace tcsm
