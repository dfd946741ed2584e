#include "lrlab/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

#include "lrlab/sectors.hpp"

namespace lrlab {

unsigned default_thread_count() {
  if (const char* env = std::getenv("LRLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

/// A block operator that is diagonal with exactly two distinct values q_a
/// and q_b. For Hermitian A, ||[A, Q]|| = |q_a - q_b| sigma_max(A restricted
/// to rows in the q_a eigenspace and columns in the q_b eigenspace).
struct TwoLevel {
  std::vector<long> a;
  std::vector<long> b;
  double gap = 0.0;
};

std::optional<TwoLevel> two_level_form(const SparseMatrix& q) {
  const long n = q.rows();
  Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(n);
  for (int k = 0; k < q.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(q, k); it; ++it) {
      if (it.row() != it.col()) return std::nullopt;
      diag(it.row()) = it.value();
    }
  }
  if (diag.imag().cwiseAbs().maxCoeff() != 0.0) return std::nullopt;
  TwoLevel out;
  const double qa = diag(0).real();
  double qb = qa;
  for (long k = 0; k < n; ++k) {
    const double v = diag(k).real();
    if (v == qa) {
      out.a.push_back(k);
    } else if (out.b.empty() || v == qb) {
      qb = v;
      out.b.push_back(k);
    } else {
      return std::nullopt;
    }
  }
  out.gap = std::abs(qa - qb);
  return out;
}

struct Block {
  SpectralDecomposition decomp;
  std::unique_ptr<HeisenbergFrame> frame;
  std::vector<SparseMatrix> q;
  std::vector<std::optional<TwoLevel>> two_level;
  /// Columns kept under an occupation cap; empty means all.
  std::vector<long> columns;
  bool restricted = false;
};

bool within_occupation(long state, const std::vector<int>& dims, const std::vector<SiteKind>& kinds,
                       int cap) {
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const long digit = state % dims[i];
    state /= dims[i];
    if (kinds[i] == SiteKind::mode && digit > cap) return false;
  }
  return true;
}

template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SimulationSweep commutator_norm_sweep(const TwoFamilyHamiltonian& h, const LocalOperator& o_p,
                                      const std::vector<LocalOperator>& o_q,
                                      const std::vector<double>& t_grid,
                                      const SweepOptions& options) {
  const std::uint64_t dim = h.hilbert_dim();
  if (dim > kMaxSweepDim) {
    throw CapacityError("Hilbert dimension " + std::to_string(dim) + " exceeds the cap of " +
                        std::to_string(kMaxSweepDim));
  }
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) {
    throw Error("t_grid must be sorted");
  }
  if (options.max_initial_occupation && *options.max_initial_occupation < 0) {
    throw Error("max_initial_occupation must be nonnegative");
  }
  const auto& dims = h.site_dims();
  std::vector<int> all(dims.size());
  std::iota(all.begin(), all.end(), 0);

  std::vector<SparseMatrix> ops;
  ops.reserve(o_q.size() + 2);
  ops.push_back(sparse_hamiltonian(h));
  ops.push_back(embed_sparse(o_p, all, dims));
  for (const auto& q : o_q) ops.push_back(embed_sparse(q, all, dims));
  const SectorDecomposition sectors = find_sectors(static_cast<long>(dim), ops);

  SimulationSweep sweep;
  sweep.o_p = o_p.label;
  sweep.t = t_grid;
  sweep.hilbert_dim = dim;
  sweep.sectors = static_cast<int>(sectors.blocks.size());
  sweep.max_initial_occupation = options.max_initial_occupation;
  for (const auto& q : o_q) {
    sweep.o_q.push_back(q.label);
    sweep.d.push_back(region_distance(h.graph(), o_p.support, q.support));
  }
  sweep.norms.assign(o_q.size(), std::vector<double>(t_grid.size(), 0.0));

  std::vector<std::unique_ptr<Block>> blocks;
  for (int b = 0; b < static_cast<int>(sectors.blocks.size()); ++b) {
    const auto& states = sectors.blocks[static_cast<std::size_t>(b)];
    if (states.size() < 2) continue;
    const SparseMatrix p_b = restrict_sparse(ops[1], sectors, b);
    if (p_b.nonZeros() == 0) continue;
    auto block = std::make_unique<Block>();
    if (options.max_initial_occupation) {
      block->restricted = true;
      for (std::size_t k = 0; k < states.size(); ++k) {
        if (within_occupation(states[k], dims, h.site_kinds(), *options.max_initial_occupation)) {
          block->columns.push_back(static_cast<long>(k));
        }
      }
      if (block->columns.empty()) continue;
    }
    block->decomp = decompose(restrict_dense(ops[0], sectors, b));
    block->frame = std::make_unique<HeisenbergFrame>(block->decomp, Matrix(p_b));
    const bool hermitian_p = hermiticity_defect(Matrix(p_b)) == 0.0;
    for (std::size_t q = 0; q < o_q.size(); ++q) {
      block->q.push_back(restrict_sparse(ops[q + 2], sectors, b));
      block->two_level.push_back(hermitian_p && !block->restricted
                                     ? two_level_form(block->q.back())
                                     : std::nullopt);
    }
    blocks.push_back(std::move(block));
  }

  const unsigned threads = options.threads ? options.threads : default_thread_count();
  parallel_for(t_grid.size(), threads, [&](std::size_t k) {
    for (const auto& block : blocks) {
      const Matrix a = block->frame->at(t_grid[k]);
      for (std::size_t q = 0; q < o_q.size(); ++q) {
        const SparseMatrix& qb = block->q[q];
        if (qb.nonZeros() == 0) continue;
        double norm;
        if (const auto& form = block->two_level[q]) {
          if (form->a.empty() || form->b.empty()) continue;
          norm = form->gap * spectral_norm(a(form->a, form->b));
        } else if (block->restricted) {
          const Matrix c = a * qb - qb * a;
          Matrix cols(c.rows(), static_cast<long>(block->columns.size()));
          for (std::size_t j = 0; j < block->columns.size(); ++j) {
            cols.col(static_cast<long>(j)) = c.col(block->columns[j]);
          }
          norm = spectral_norm(cols);
        } else {
          norm = spectral_norm(Matrix(a * qb - qb * a));
        }
        double& slot = sweep.norms[q][k];
        slot = std::max(slot, norm);
      }
    }
  });
  return sweep;
}

VelocityEstimate extract_velocity(const SimulationSweep& sweep, double threshold) {
  if (!(threshold > 0.0)) throw Error("velocity threshold must be positive");
  VelocityEstimate out;
  out.threshold = threshold;
  std::map<int, double> first;
  for (std::size_t q = 0; q < sweep.norms.size(); ++q) {
    const auto& n = sweep.norms[q];
    for (std::size_t k = 0; k < n.size(); ++k) {
      if (n[k] < threshold) continue;
      double t = sweep.t[k];
      if (k > 0) {
        const double frac = (threshold - n[k - 1]) / (n[k] - n[k - 1]);
        t = sweep.t[k - 1] + frac * (sweep.t[k] - sweep.t[k - 1]);
      }
      auto [it, inserted] = first.emplace(sweep.d[q], t);
      if (!inserted) it->second = std::min(it->second, t);
      break;
    }
  }
  out.crossings.assign(first.begin(), first.end());
  if (out.crossings.size() < 3) throw Error("cone not resolved; extend t_grid");

  const double count = static_cast<double>(out.crossings.size());
  double mean_t = 0.0, mean_d = 0.0;
  for (const auto& [d, t] : out.crossings) {
    mean_t += t / count;
    mean_d += d / count;
  }
  double stt = 0.0, s_td = 0.0;
  for (const auto& [d, t] : out.crossings) {
    stt += (t - mean_t) * (t - mean_t);
    s_td += (t - mean_t) * (d - mean_d);
  }
  if (!(stt > 0.0)) throw Error("cone not resolved; extend t_grid");
  const double slope = s_td / stt;
  out.intercept = mean_d - slope * mean_t;
  double sq = 0.0;
  for (const auto& [d, t] : out.crossings) {
    const double r = d - (slope * t + out.intercept);
    sq += r * r;
  }
  out.residual = std::sqrt(sq / count);
  out.v_emp = std::max(0.0, slope);
  return out;
}

VerificationReport verify_bound(const SimulationSweep& sweep, BoundMethod method, int R,
                                const std::function<double(std::size_t, double)>& bound,
                                const VerifyOptions& options) {
  VerificationReport report;
  report.method = method;
  report.slack = options.slack;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < sweep.norms.size(); ++q) {
    const int d = sweep.d[q];
    if (d <= R) {
      report.excluded_d.push_back(d);
      continue;
    }
    for (std::size_t k = 0; k < sweep.t.size(); ++k) {
      MarginEntry e;
      e.d = d;
      e.t = sweep.t[k];
      e.measured = sweep.norms[q][k];
      e.bound = options.bound_scale * bound(q, e.t);
      e.margin = e.bound - e.measured;
      report.min_margin = std::min(report.min_margin, e.margin);
      if (!(e.margin >= -options.slack)) report.passed = false;
      report.entries.push_back(e);
    }
  }
  return report;
}

}  // namespace lrlab
