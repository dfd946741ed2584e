#include "lrlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lrlab {

namespace {

/// Commutator norms at or below kNonzeroCommutator are roundoff from exact
/// cancellations and count as zero.
double significant(double norm) { return norm > kNonzeroCommutator ? norm : 0.0; }

}  // namespace

double series_prefactor(double h0, double h1, double K, double Q) {
  const double ratio = (h0 > 0.0 && h1 > 0.0) ? std::max(h0 / h1, h1 / h0) : 1.0;
  const double k_factor = K > 0.0 ? std::max(1.0 / K, 1.0) : 1.0;
  const double q_factor = (K > 0.0 && Q > 0.0) ? std::max(std::sqrt(K) / Q, 1.0) : 1.0;
  return std::sqrt(2.0) * ratio * k_factor * q_factor;
}

BoundConstants with_lambda(BoundConstants consts, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be a positive finite number");
  }
  consts.lambda = lambda;
  return consts;
}

BoundConstants compute_bound_constants(const TwoFamilyHamiltonian& h,
                                       const NoncommutingAdjacency& adjacency,
                                       std::optional<double> lambda) {
  const LocalAlgebra algebra(h);
  const auto& terms = h.terms();
  BoundConstants c;
  c.h0 = h.h0();
  c.h1 = h.h1();
  c.norm_mode = h.norm_mode();

  auto scale = [&](int id) { return h.coupling(terms[static_cast<std::size_t>(id)].family); };
  const auto& op = [&](int id) -> const LocalOperator& {
    return terms[static_cast<std::size_t>(id)].op;
  };

  for (int i = 0; i < adjacency.size(); ++i) {
    for (int j : adjacency.neighbours(i)) {
      if (j < i) continue;
      const double pair = scale(i) * scale(j);
      c.K = std::max(c.K, pair * significant(algebra.commutator_norm(op(i), op(j))));
      // [[Phi_i, Phi_j], Phi_k] can only be nonzero when Phi_k overlaps the
      // union of the first two supports.
      for (int k = 0; k < h.term_count(); ++k) {
        const auto& sk = op(k).support;
        if (!overlaps(sk, op(i).support) && !overlaps(sk, op(j).support)) continue;
        c.Q = std::max(c.Q, pair * scale(k) *
                                significant(algebra.nested_commutator_norm(op(i), op(j), op(k))));
      }
    }
  }
  c.nu = adjacency.nu();
  c.R = h.locality_radius();
  c.gamma = std::sqrt(2.0) * c.nu;
  c.xi = 1.0 / c.R;
  c.zero_velocity = !(c.K > 0.0);
  c.M = series_prefactor(c.h0, c.h1, c.K, c.Q);
  c.Mtilde = 1.0;
  c.Mtildetilde = c.Mtilde * c.M;
  c.lambda = c.xi;
  if (lambda) c = with_lambda(c, *lambda);
  return c;
}

BoundConstants compute_bound_constants(const TwoFamilyHamiltonian& h,
                                       std::optional<double> lambda) {
  return compute_bound_constants(h, noncommuting_adjacency(h), lambda);
}

ObservableConditions observable_constants(const TwoFamilyHamiltonian& h,
                                          const NoncommutingAdjacency& adjacency,
                                          const BoundConstants& consts, const LocalOperator& o_p,
                                          const LocalOperator& o_q) {
  ObservableConditions out;
  out.d = region_distance(h.graph(), o_p.support, o_q.support);
  if (out.d <= consts.R) {
    throw ConditionError("condition (i) violated: d = " + std::to_string(out.d) +
                         " is not greater than R = " + std::to_string(consts.R));
  }
  if (consts.zero_velocity) {
    throw ConditionError("constants undefined for commuting system");
  }
  const LocalAlgebra algebra(h);
  const auto& terms = h.terms();

  double max_p = 0.0;
  double max_q = 0.0;
  for (int i = 0; i < h.term_count(); ++i) {
    const LocalOperator& phi = terms[static_cast<std::size_t>(i)].op;
    const double np = algebra.commutator_norm(o_p, phi);
    if (np > kNonzeroCommutator) out.z_p.push_back(i);
    max_p = std::max(max_p, np);
    max_q = std::max(max_q, algebra.commutator_norm(o_q, phi));
  }
  out.n_P = static_cast<int>(out.z_p.size());
  out.F_P = max_p / consts.K;

  double max_nested = 0.0;
  for (int i = 0; i < adjacency.size(); ++i) {
    for (int j : adjacency.neighbours(i)) {
      if (j < i) continue;
      const auto& a = terms[static_cast<std::size_t>(i)].op;
      const auto& b = terms[static_cast<std::size_t>(j)].op;
      if (!overlaps(o_q.support, a.support) && !overlaps(o_q.support, b.support)) continue;
      max_nested = std::max(max_nested, significant(algebra.nested_commutator_norm(a, b, o_q)));
    }
  }
  double nested_ratio = 0.0;
  if (consts.Q > 0.0) {
    nested_ratio = max_nested / consts.Q;
  } else if (max_nested > 0.0) {
    nested_ratio = std::numeric_limits<double>::infinity();
  }
  out.F_Q = std::max(max_q / consts.K, nested_ratio);
  return out;
}

}  // namespace lrlab
