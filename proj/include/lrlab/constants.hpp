#pragma once

#include <optional>
#include <vector>

#include "lrlab/hamiltonian.hpp"

namespace lrlab {

/// Constants consumed by every bound. K and Q include the coupling products
/// (K = max h_a h_b ||[Phi_a^i, Phi_b^j]||).
struct BoundConstants {
  double K = 0.0;
  double Q = 0.0;
  int nu = 0;
  /// 1 + largest support diameter (hop count); a two-site bond gives R = 2.
  int R = 1;
  double gamma = 0.0;  // sqrt(2) nu
  double xi = 1.0;     // 1 / R
  double lambda = 1.0;
  double M = 0.0;
  double Mtilde = 1.0;
  double Mtildetilde = 0.0;  // Mtilde * M
  double h0 = 0.0;
  double h1 = 0.0;
  /// Set when every cross-family commutator vanishes (K = 0).
  bool zero_velocity = false;
  CommutatorNorm norm_mode = CommutatorNorm::full;
};

inline constexpr const char* kRadiusDefinition = "R = 1 + max support diameter (hop count)";

/// sqrt(2) max{h0/h1, h1/h0} max{1/K, 1} max{sqrt(K)/Q, 1}.
///
/// A factor whose defining constant vanishes is 1: with h0 h1 = 0 or K = 0
/// every n >= 1 term of the chain series is zero, and Q multiplies only the
/// odd-order terms, which vanish when Q = 0.
double series_prefactor(double h0, double h1, double K, double Q);

/// Fills BoundConstants from explicit commutator evaluation. `lambda`
/// defaults to xi; an explicit value must be positive.
BoundConstants compute_bound_constants(const TwoFamilyHamiltonian& h,
                                       const NoncommutingAdjacency& adjacency,
                                       std::optional<double> lambda = std::nullopt);
BoundConstants compute_bound_constants(const TwoFamilyHamiltonian& h,
                                       std::optional<double> lambda = std::nullopt);

/// Same constants with a different decay parameter.
BoundConstants with_lambda(BoundConstants consts, double lambda);

/// Raised when a pair of observables does not meet the conditions the
/// observable bound needs.
class ConditionError : public Error {
 public:
  using Error::Error;
};

/// F_P, F_Q, n_P and d for a pair of observables.
struct ObservableConditions {
  double F_P = 0.0;
  double F_Q = 0.0;
  int n_P = 0;
  int d = 0;
  /// Flat ids of the terms that do not commute with O_P.
  std::vector<int> z_p;
};

/// Throws ConditionError("condition (i) violated ...") when d <= R and
/// ConditionError("constants undefined for commuting system") when K = 0.
/// F_Q is +inf when Q = 0 but some ||[O_Q, [Phi_i, Phi_j]]|| is nonzero.
ObservableConditions observable_constants(const TwoFamilyHamiltonian& h,
                                          const NoncommutingAdjacency& adjacency,
                                          const BoundConstants& consts, const LocalOperator& o_p,
                                          const LocalOperator& o_q);

}  // namespace lrlab
