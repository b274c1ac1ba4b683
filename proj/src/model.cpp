#include "tcsm/model.hpp"

#include <algorithm>
#include <cmath>

#include "tcsm/errors.hpp"

namespace tcsm {

std::string to_string(Regime regime) {
  return regime == Regime::Full ? "full" : "truncated";
}

ModelParams derive_params(int n, int r, double length, double beta) {
  if (n < 3) throw DomainError("particle count N must be >= 3");
  if (r < 1) throw DomainError("interaction range r must be >= 1");
  if (!(length > 0.0) || !std::isfinite(length))
    throw DomainError("circumference L must be positive and finite");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError("exponent beta must be positive and finite");

  ModelParams p;
  p.n = n;
  p.r = r;
  p.length = length;
  p.beta = beta;
  p.g = beta * (beta - 1.0);
  p.G = beta * beta;
  p.c = n / 2;  // N/2 for even N, (N-1)/2 for odd N
  p.r_eff = r < n / 2 ? r : n / 2;
  p.regime = r >= p.c ? Regime::Full : Regime::Truncated;

  if (p.regime == Regime::Truncated) {
    // r < c implies 2r + 2 <= N
    if (2 * r + 2 > n) throw std::logic_error("truncated regime with 2r + 2 > N");
    p.k = n < 3 * r + 1 ? (3 * r + 1) - n : 0;
    p.neighbors = 2 * r;
  } else {
    p.neighbors = n - 1;
  }
  return p;
}

PairList interaction_pairs(const ModelParams& params) {
  const int n = params.n;
  PairList pairs;
  for (int d = 1; d <= params.r_eff; ++d) {
    for (int a = 0; a < n; ++a) {
      // antipodal pairs (2d == N) would otherwise be listed from both ends
      if (2 * d == n && a >= n / 2) continue;
      pairs.push_back({a, (a + d) % n});
    }
  }
  return pairs;
}

TripleList three_body_triples(const ModelParams& params) {
  TripleList triples;
  if (params.regime == Regime::Full) return triples;
  const int n = params.n;
  const int r = params.r_eff;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j || cyclic_distance(i, j, n) > r) continue;
      for (int k = i + 1; k < n; ++k) {
        if (k == j || cyclic_distance(j, k, n) > r) continue;
        if (cyclic_distance(k, i, n) > r) triples.push_back({i, j, k});
      }
    }
  }
  return triples;
}

std::int64_t closed_triple_count(const ModelParams& params) {
  const int n = params.n;
  const int r = params.r_eff;
  std::int64_t count = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (cyclic_distance(a, b, n) > r) continue;
      for (int c = b + 1; c < n; ++c)
        if (cyclic_distance(b, c, n) <= r && cyclic_distance(a, c, n) <= r) ++count;
    }
  return count;
}

std::int64_t triple_count_formula(const ModelParams& params) {
  if (params.regime == Regime::Full)
    throw DomainError("three-body count formula only applies when r < c");
  const std::int64_t n = params.n;
  const std::int64_t r = params.r;
  const std::int64_t k = *params.k;
  const std::int64_t twice = n * (r - k) * (r + k + 1);
  // (r-k) and (r+k+1) have odd sum, so one of them is even
  if (twice % 2 != 0) throw std::logic_error("non-integer three-body count");
  return twice / 2;
}

double energy_unit(const ModelParams& params) {
  const double s = std::numbers::pi / params.length;
  return params.beta * params.beta * s * s;
}

GroundEnergy ground_energy(const ModelParams& params) {
  const std::int64_t n = params.n;
  std::int64_t sixfold = 0;
  if (params.regime == Regime::Truncated) {
    const std::int64_t r = params.r;
    const std::int64_t k = *params.k;
    sixfold = n * (3 * r * (r + 1) + k * (k + 1));
  } else {
    sixfold = n * (n * n - 1);
  }
  if (sixfold % 6 != 0) throw std::logic_error("non-integer ground energy");
  GroundEnergy e;
  e.reduced = sixfold / 6;
  e.physical = static_cast<double>(e.reduced) * energy_unit(params);
  return e;
}

std::int64_t ground_energy_by_counting(const ModelParams& params) {
  return static_cast<std::int64_t>(interaction_pairs(params).size()) +
         closed_triple_count(params);
}

Model::Model(ModelParams params)
    : params_(std::move(params)),
      pairs_(interaction_pairs(params_)),
      triples_(three_body_triples(params_)),
      adjacency_(static_cast<std::size_t>(params_.n)) {
  for (const auto& [a, b] : pairs_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

}  // namespace tcsm
