#pragma once

// Potential energy, local energy (H psi)/psi and the sampling harness that
// confirms or refutes closed-form eigenvalues numerically.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcsm/model.hpp"
#include "tcsm/wavefunction.hpp"

namespace tcsm {

/// g (pi/L)^2 sum_pairs csc^2 - G (pi/L)^2 sum_triples cot(theta_ij) cot(theta_jk)
double potential_energy(const Model& model, const Configuration& config);

/// -1/2 Laplacian(psi0 phi)/(psi0 phi) + V, with hbar = m = 1.
cplx local_energy(const Model& model, const StateSpec& spec, const Configuration& config);

struct SampleSet {
  std::vector<Configuration> configs;
  std::uint64_t attempts = 0;
  double acceptance_rate = 1.0;
};

inline constexpr std::uint64_t kMaxRejections = 1'000'000;

/// i.i.d. uniform positions, rejected until the minimum cyclic separation
/// is at least min_sep_frac * L. Deterministic in seed.
SampleSet sample_configurations(const ModelParams& params, int count, std::uint64_t seed,
                                double min_sep_frac);

/// Mergeable (count, mean, M2, min, max) accumulator.
class RunningStats {
 public:
  void push(double x);
  void merge(const RunningStats& other);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stddev() const;
  double min() const { return min_; }
  double max() const { return max_; }
  double max_abs_deviation() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
};

/// Physical energy per reduced unit of H1: E - E0 = factor * (eps - eps0).
struct UnitConversion {
  double factor = 0.0;
  double alt_factor = 0.0;  ///< (2 pi / L)^2, the competing convention
  double length = 0.0;
  int calibration_n = 0;
  double calibration_beta = 0.0;
  double calibration_spread = 0.0;  ///< relative stddev of the calibration run
  std::string note() const;
};

/// Fixes the conversion by demanding that the r = 1, phi = e_1 level equal
/// 1 + 2 beta in reduced units.
UnitConversion calibrate_conversion(double length, std::uint64_t seed = 1);

enum class Verdict { Pass, Fail, NoPrediction };

std::string to_string(Verdict verdict);

struct VerifyOptions {
  double min_sep_frac = 1e-3;
  int threads = 1;
  std::optional<UnitConversion> conversion;
};

/// Maximum |Im E| / |Re E| tolerated for any sample.
inline constexpr double kImagTolerance = 1e-9;

struct ResidualReport {
  std::string state;
  int n = 0;
  int r = 0;
  double beta = 0.0;
  double length = 0.0;
  std::size_t samples = 0;
  std::size_t rejected_nodes = 0;
  double acceptance_rate = 1.0;
  double energy_mean = 0.0;
  double energy_stddev = 0.0;
  double max_abs_dev = 0.0;
  double max_imag_ratio = 0.0;
  double ground_energy = 0.0;  ///< closed-form E0 (physical)
  std::optional<double> predicted;
  double tol = 0.0;
  Verdict verdict = Verdict::Fail;
  std::optional<double> conversion;
  std::optional<double> reduced_mean;  ///< (mean - E0) / conversion
  std::string unit_note;

  double relative_spread() const;
  /// |mean - predicted| / (|predicted| + 1); nullopt without a prediction
  std::optional<double> prediction_error() const;
};

/// Local energies over the given configurations; configurations at nodes
/// of phi are skipped and counted. Throws NodeProximity if none survive.
ResidualReport verify_on(const Model& model, const StateSpec& spec,
                         const std::vector<Configuration>& configs,
                         std::optional<double> predicted, double tol,
                         const VerifyOptions& options = {});

ResidualReport verify_eigenstate(const Model& model, const StateSpec& spec, int count,
                                 std::uint64_t seed, std::optional<double> predicted, double tol,
                                 const VerifyOptions& options = {});

/// Worker count from TCSM_THREADS, else hardware concurrency (>= 1).
int default_thread_count();

}  // namespace tcsm
