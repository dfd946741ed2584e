#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lrlab/bounds.hpp"
#include "lrlab/hamiltonian.hpp"

namespace lrlab {

/// Largest Hilbert dimension accepted by commutator_norm_sweep.
inline constexpr std::uint64_t kMaxSweepDim = std::uint64_t{1} << 14;

struct SweepOptions {
  /// Worker threads; 0 means LRLAB_THREADS, falling back to the hardware
  /// concurrency.
  unsigned threads = 0;
  /// When set, norms are measured on initial states in which every bosonic
  /// mode holds at most this many quanta: ||[O_P(t), O_Q] P_low||.
  std::optional<int> max_initial_occupation;
};

/// ||[O_P(t), O_Q]|| for several placements of O_Q on a time grid.
struct SimulationSweep {
  std::string model;
  std::string o_p;
  std::vector<std::string> o_q;
  /// region_distance(supp O_P, supp O_Q) for each placement.
  std::vector<int> d;
  std::vector<double> t;
  /// norms[q][k] at time t[k].
  std::vector<std::vector<double>> norms;
  std::uint64_t hilbert_dim = 0;
  int sectors = 0;
  std::optional<int> max_initial_occupation;
};

/// Worker count from LRLAB_THREADS (at least 1); hardware concurrency when
/// unset or invalid.
unsigned default_thread_count();

/// Splits the Hilbert space into sectors left invariant by H, O_P and every
/// O_Q, diagonalises H once per sector and evaluates the commutator norms for
/// every time in parallel. Throws CapacityError above kMaxSweepDim and Error
/// for an unsorted grid.
SimulationSweep commutator_norm_sweep(const TwoFamilyHamiltonian& h, const LocalOperator& o_p,
                                      const std::vector<LocalOperator>& o_q,
                                      const std::vector<double>& t_grid,
                                      const SweepOptions& options = {});

struct VelocityEstimate {
  double threshold = 0.0;
  /// (d, first time the norm reaches the threshold) for every resolved d.
  std::vector<std::pair<int, double>> crossings;
  /// Slope of the least-squares line d = v t + c, clamped at 0.
  double v_emp = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the fit, in units of d.
  double residual = 0.0;
};

/// Threshold-crossing light-cone fit. Needs at least three distinct
/// distances with a crossing; otherwise throws Error("cone not resolved;
/// extend t_grid").
VelocityEstimate extract_velocity(const SimulationSweep& sweep, double threshold = 1e-3);

struct MarginEntry {
  int d = 0;
  double t = 0.0;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

struct VerificationReport {
  BoundMethod method = BoundMethod::closed_form;
  std::vector<MarginEntry> entries;
  /// Placements with d <= R, which the bound does not cover.
  std::vector<int> excluded_d;
  double slack = 0.0;
  double min_margin = 0.0;
  bool passed = true;
};

struct VerifyOptions {
  /// Absolute slack: a point passes when margin >= -slack.
  double slack = 1e-9;
  /// Multiplies every bound value (harness self-test hook).
  double bound_scale = 1.0;
};

/// `bound(q, t)` is evaluated for every placement q with d > R. Entries are
/// ordered by placement, then by time.
VerificationReport verify_bound(const SimulationSweep& sweep, BoundMethod method, int R,
                                const std::function<double(std::size_t, double)>& bound,
                                const VerifyOptions& options = {});

}  // namespace lrlab
