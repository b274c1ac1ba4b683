#include "tcsm/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "tcsm/errors.hpp"

namespace tcsm {

namespace {

constexpr double kPi = std::numbers::pi;

double pair_theta(double xa, double xb, double length) {
  double y = std::fmod(xa - xb, length);
  if (y < 0) y += length;
  return kPi * y / length;
}

double checked_sin(double theta) {
  const double s = std::sin(theta);
  if (!(s >= 1e-300)) throw SeparationUnderflow("particles coincide numerically");
  return s;
}

double uniform01(std::mt19937_64& gen) {
  // 53 random mantissa bits; identical on every platform for a given seed
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

double potential_energy(const Model& model, const Configuration& config) {
  const auto& p = model.params();
  if (static_cast<int>(config.x.size()) != p.n) throw DomainError("configuration size mismatch");
  const double k2 = (kPi / p.length) * (kPi / p.length);

  double two_body = 0.0;
  for (const auto& [a, b] : model.pairs()) {
    const double s = checked_sin(pair_theta(config.x[a], config.x[b], p.length));
    two_body += 1.0 / (s * s);
  }
  double three_body = 0.0;
  for (const auto& [i, j, k] : model.triples()) {
    const double tij = pair_theta(config.x[i], config.x[j], p.length);
    const double tjk = pair_theta(config.x[j], config.x[k], p.length);
    three_body += std::cos(tij) / checked_sin(tij) * (std::cos(tjk) / checked_sin(tjk));
  }
  return p.g * k2 * two_body - p.G * k2 * three_body;
}

cplx local_energy(const Model& model, const StateSpec& spec, const Configuration& config) {
  const AmplitudeData amp = amplitude(model, spec, config);
  return -0.5 * amp.lap_ratio + potential_energy(model, config);
}

SampleSet sample_configurations(const ModelParams& params, int count, std::uint64_t seed,
                                double min_sep_frac) {
  if (count < 1) throw DomainError("sample count must be >= 1");
  if (!(min_sep_frac > 0.0) || !(min_sep_frac < 1.0 / params.n))
    throw DomainError("min_sep_frac must lie in (0, 1/N)");

  std::mt19937_64 gen(seed);
  const double floor = min_sep_frac * params.length;
  SampleSet out;
  out.configs.reserve(static_cast<std::size_t>(count));
  std::uint64_t rejected = 0;
  std::vector<double> x(static_cast<std::size_t>(params.n));
  while (static_cast<int>(out.configs.size()) < count) {
    for (double& v : x) v = uniform01(gen) * params.length;
    ++out.attempts;
    const double sep = min_cyclic_separation(x, params.length);
    if (sep >= floor) {
      out.configs.push_back(Configuration{x, sep});
    } else if (++rejected >= kMaxRejections) {
      throw SamplingExhausted("no admissible configuration after " +
                              std::to_string(kMaxRejections) + " rejections");
    }
  }
  out.acceptance_rate = static_cast<double>(count) / static_cast<double>(out.attempts);
  return out;
}

// ---------------------------------------------------------------- statistics

void RunningStats::push(double x) {
  RunningStats one;
  one.n_ = 1;
  one.mean_ = x;
  one.min_ = one.max_ = x;
  merge(one);
}

void RunningStats::merge(const RunningStats& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double delta = o.mean_ - mean_;
  const double total = na + nb;
  mean_ += delta * nb / total;
  m2_ += o.m2_ + delta * delta * na * nb / total;
  n_ += o.n_;
  min_ = std::min(min_, o.min_);
  max_ = std::max(max_, o.max_);
}

double RunningStats::stddev() const { return std::sqrt(variance()); }

double RunningStats::max_abs_deviation() const {
  return n_ == 0 ? 0.0 : std::max(max_ - mean_, mean_ - min_);
}

// ---------------------------------------------------------------- verdicts

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NoPrediction: return "no_prediction";
  }
  return "?";
}

double ResidualReport::relative_spread() const {
  return energy_stddev / (std::abs(energy_mean) + 1.0);
}

std::optional<double> ResidualReport::prediction_error() const {
  if (!predicted) return std::nullopt;
  return std::abs(energy_mean - *predicted) / (std::abs(*predicted) + 1.0);
}

std::string UnitConversion::note() const {
  std::ostringstream os;
  os.precision(17);
  os << "E - E0 = " << factor << " * (eps - eps0); calibrated from the r=1 e1 level "
     << "(1 + 2 beta) at N=" << calibration_n << ", beta=" << calibration_beta
     << "; factor * L^2 / pi^2 = " << factor * length * length / (kPi * kPi)
     << " ((2 pi/L)^2 would give 4)";
  return os.str();
}

UnitConversion calibrate_conversion(double length, std::uint64_t seed) {
  const Model model(derive_params(6, 1, length, 1.0));
  const auto& p = model.params();
  const auto samples = sample_configurations(p, 256, seed, 1e-3);
  RunningStats stats;
  for (const auto& c : samples.configs) {
    try {
      stats.push(local_energy(model, StateSpec::of(StateKind::E1), c).real());
    } catch (const NodeProximity&) {
    }
  }
  const double level = 1.0 + p.neighbors * p.beta;
  UnitConversion u;
  u.factor = (stats.mean() - ground_energy(p).physical) / level;
  u.alt_factor = (2.0 * kPi / length) * (2.0 * kPi / length);
  u.length = length;
  u.calibration_n = p.n;
  u.calibration_beta = p.beta;
  u.calibration_spread = stats.stddev() / std::abs(stats.mean());
  return u;
}

int default_thread_count() {
  if (const char* env = std::getenv("TCSM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ResidualReport verify_on(const Model& model, const StateSpec& spec,
                         const std::vector<Configuration>& configs,
                         std::optional<double> predicted, double tol,
                         const VerifyOptions& options) {
  const auto& p = model.params();
  const std::size_t count = configs.size();
  std::vector<std::optional<cplx>> values(count);

  auto work = [&](std::size_t begin, std::size_t end, std::exception_ptr& err) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          values[i] = local_energy(model, spec, configs[i]);
        } catch (const NodeProximity&) {
          values[i].reset();
        }
      }
    } catch (...) {
      err = std::current_exception();
    }
  };

  const std::size_t threads =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.threads, 1)), 1,
                              std::max<std::size_t>(count / 64, 1));
  std::vector<std::exception_ptr> errors(threads);
  if (threads == 1) {
    work(0, count, errors[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back(work, std::min(count, t * chunk), std::min(count, (t + 1) * chunk),
                        std::ref(errors[t]));
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // in-order reduction, so the result does not depend on the thread count
  RunningStats stats;
  ResidualReport rep;
  for (const auto& v : values) {
    if (!v) {
      ++rep.rejected_nodes;
      continue;
    }
    stats.push(v->real());
    const double ratio = std::abs(v->imag()) / std::max(std::abs(v->real()), 1e-300);
    rep.max_imag_ratio = std::max(rep.max_imag_ratio, ratio);
  }
  if (stats.count() == 0)
    throw NodeProximity("every sampled configuration lies on a node of " + spec.label());

  rep.state = spec.label();
  rep.n = p.n;
  rep.r = p.r;
  rep.beta = p.beta;
  rep.length = p.length;
  rep.samples = stats.count();
  rep.energy_mean = stats.mean();
  rep.energy_stddev = stats.stddev();
  rep.max_abs_dev = stats.max_abs_deviation();
  rep.ground_energy = ground_energy(p).physical;
  rep.predicted = predicted;
  rep.tol = tol;
  if (options.conversion) {
    rep.conversion = options.conversion->factor;
    rep.reduced_mean = (rep.energy_mean - rep.ground_energy) / options.conversion->factor;
    rep.unit_note = options.conversion->note();
  } else {
    rep.unit_note = "physical units, hbar = m = 1";
  }

  const bool constant = rep.relative_spread() < tol && rep.max_imag_ratio <= kImagTolerance;
  if (!predicted) {
    rep.verdict = constant ? Verdict::NoPrediction : Verdict::Fail;
  } else {
    rep.verdict = constant && *rep.prediction_error() < tol ? Verdict::Pass : Verdict::Fail;
  }
  return rep;
}

ResidualReport verify_eigenstate(const Model& model, const StateSpec& spec, int count,
                                 std::uint64_t seed, std::optional<double> predicted, double tol,
                                 const VerifyOptions& options) {
  const SampleSet samples =
      sample_configurations(model.params(), count, seed, options.min_sep_frac);
  ResidualReport rep = verify_on(model, spec, samples.configs, predicted, tol, options);
  rep.acceptance_rate = samples.acceptance_rate;
  return rep;
}

}  // namespace tcsm
