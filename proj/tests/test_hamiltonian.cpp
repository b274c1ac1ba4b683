#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tcsm/errors.hpp"
#include "tcsm/hamiltonian.hpp"

using namespace tcsm;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("potential at the equally spaced configuration") {
  // N = 4, r = 1, L = 2 pi: four nearest-neighbour pairs at separation pi/2,
  // and every triple has cot(pi/4) cot(pi/4) = 1
  const auto p = derive_params(4, 1, 2.0 * kPi, 2.0);
  const Model m(p);
  const auto c = equally_spaced(p);
  const double k2 = 0.25;
  const double expected = p.g * k2 * 4 * 2.0 - p.G * k2 * static_cast<double>(m.triples().size());
  CHECK(potential_energy(m, c) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("ground state local energy is constant") {
  for (auto [n, r, beta] : {std::tuple{6, 2, 1.0}, std::tuple{9, 3, 1.0}, std::tuple{10, 4, 3.5},
                            std::tuple{5, 2, 0.5}, std::tuple{8, 4, 2.0}}) {
    const Model m(derive_params(n, r, 2.0 * kPi, beta));
    const auto rep = verify_eigenstate(m, StateSpec::of(StateKind::Ground), 500, 3,
                                       ground_energy(m.params()).physical, 1e-9);
    CAPTURE(n);
    CAPTURE(r);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.relative_spread() < 1e-9);
  }
}

TEST_CASE("a non-eigenstate fails") {
  const Model m(derive_params(6, 2));
  const auto bad = StateSpec::polynomial({{{2, 0, 0, 0, 0, 0}, 1.0}, {{0, 0, 0, 0, 0, 0}, 3.0}});
  const auto rep = verify_eigenstate(m, bad, 200, 1, std::nullopt, 1e-8);
  CHECK(rep.verdict == Verdict::Fail);
  CHECK(rep.relative_spread() > 1e-3);

  const auto none = verify_eigenstate(m, StateSpec::of(StateKind::E1), 200, 1, std::nullopt, 1e-8);
  CHECK(none.verdict == Verdict::NoPrediction);
}

TEST_CASE("calibrated unit conversion") {
  for (double length : {2.0 * kPi, 3.0, 10.0}) {
    const auto u = calibrate_conversion(length);
    CHECK(u.factor * length * length / (kPi * kPi) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(u.alt_factor == doctest::Approx(4.0 * kPi * kPi / (length * length)));
  }
}

TEST_CASE("sampling") {
  const auto p = derive_params(8, 3);
  const auto a = sample_configurations(p, 2000, 42, 1e-3);
  const auto b = sample_configurations(p, 2000, 42, 1e-3);
  REQUIRE(a.configs.size() == 2000);
  CHECK(a.acceptance_rate > 0.9);
  for (std::size_t i = 0; i < a.configs.size(); ++i) CHECK(a.configs[i].x == b.configs[i].x);
  for (const auto& c : a.configs) {
    CHECK(c.min_sep >= 1e-3 * p.length);
    for (double x : c.x) CHECK((x >= 0.0 && x < p.length));
  }
  CHECK(sample_configurations(p, 10, 43, 1e-3).configs[0].x != a.configs[0].x);

  CHECK_THROWS_AS(sample_configurations(p, 0, 1, 1e-3), DomainError);
  CHECK_THROWS_AS(sample_configurations(p, 10, 1, 0.0), DomainError);
  CHECK_THROWS_AS(sample_configurations(p, 10, 1, 1.0 / 8), DomainError);
  CHECK_THROWS_AS(sample_configurations(p, 10, 1, 0.124), SamplingExhausted);
}

TEST_CASE("thread count does not change the result") {
  const Model m(derive_params(9, 2, 2.0 * kPi, 2.5));
  const auto spec = StateSpec::of(StateKind::Combo);
  VerifyOptions one;
  VerifyOptions four;
  four.threads = 4;
  const auto a = verify_eigenstate(m, spec, 1000, 8, std::nullopt, 1e-8, one);
  const auto b = verify_eigenstate(m, spec, 1000, 8, std::nullopt, 1e-8, four);
  CHECK(a.energy_mean == b.energy_mean);
  CHECK(a.energy_stddev == b.energy_stddev);
  CHECK(a.max_abs_dev == b.max_abs_dev);
}

TEST_CASE("running statistics merge") {
  RunningStats all;
  RunningStats left;
  RunningStats right;
  for (int i = 0; i < 100; ++i) {
    const double x = 1e9 + std::sin(i);
    all.push(x);
    (i < 37 ? left : right).push(x);
  }
  left.merge(right);
  CHECK(left.count() == 100);
  CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-15));
  CHECK(left.stddev() == doctest::Approx(all.stddev()).epsilon(1e-6));
  CHECK(all.stddev() == doctest::Approx(0.7).epsilon(0.05));
}
